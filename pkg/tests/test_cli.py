import json
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor


from detfacet.cli import analyze_report, main, render_report, run_verify
from detfacet.complexes import complex_graph, is_closed, load_complex, validate
from detfacet.invariants import HilbertData

INTRO = {"m": 3, "n": 7, "facets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [3, 4, 5], [5, 6, 7]]}
TWO = {"m": 3, "n": 4, "facets": [[1, 2, 3], [2, 3, 4]]}


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def walk(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from walk(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from walk(v)
    else:
        yield obj


def test_analyze_intro_example(tmp_path, capsys):
    code, out, _ = run_main(["analyze", write(tmp_path, "c.json", INTRO), "--oracle", "--gb"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert rep["cliques"] == [[1, 2, 3, 4], [3, 4, 5], [5, 6, 7]]
    assert rep["invariants"]["formula"]["height"] == 4
    assert rep["invariants"]["formula"]["multiplicity"] == 54
    assert rep["invariants"]["oracle"]["multiplicity"] == 54
    assert rep["mismatches"] == []


def test_analyze_two_triangles_with_gb(tmp_path, capsys):
    code, out, _ = run_main(["analyze", write(tmp_path, "c.json", TWO), "--gb"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["closed_labeling"]["status"] == "found"
    assert rep["groebner"]["input_generators_form_basis"] is True
    assert len(rep["groebner"]["reduced_basis"]) == 2
    assert rep["primality"]["status"] == "NotPrimeByTheorem"
    assert rep["primality"]["citations"] == ["clique-intersection-bound"]


def test_every_field_is_populated(tmp_path):
    for data in (INTRO, TWO, {"m": 3, "n": 6, "facets": [[1, 2, 3], [1, 4, 5], [3, 5, 6], [2, 4, 6]]}):
        for flags in ({}, {"gb": True, "oracle": True}):
            rep = analyze_report(validate(data["n"], data["m"], data["facets"]), **flags)
            assert None not in list(walk(rep))
    rep = analyze_report(validate(4, 3, [(1, 2, 3), (2, 3, 4)]))
    assert rep["groebner"] == "skipped: pass --gb"
    assert rep["invariants"]["oracle"] == "skipped: pass --oracle"


def test_not_closed_report(tmp_path):
    rep = analyze_report(validate(6, 3, [(1, 2, 3), (1, 4, 5), (3, 5, 6), (2, 4, 6)]), gb=True, oracle=True)
    assert rep["closed_labeling"]["status"] == "none, exhaustive"
    assert rep["invariants"]["formula"] == "skipped: complex is not closed"
    assert rep["primality"]["status"] == "Unknown"
    assert rep["groebner"]["input_generators_form_basis"] is False


def test_budget_exceeded_is_reported():
    rep = analyze_report(validate(4, 3, [(1, 2, 3), (2, 3, 4)]), max_nodes=0)
    assert rep["closed_labeling"]["status"] == "none within budget"
    assert rep["invariants"]["formula"].startswith("skipped:")


def test_analyze_malformed(tmp_path, capsys):
    code, out, err = run_main(["analyze", write(tmp_path, "bad.json", '{"m": 3,\n "n": 4, "facets": [[1,2,3]')], capsys)
    assert code == 1 and out == ""
    assert "line 2" in err
    code, _, err = run_main(["analyze", write(tmp_path, "bad2.json", {"m": 3, "n": 4, "facets": [[1, 2, 9]]})], capsys)
    assert code == 1 and "9" in err
    code, _, err = run_main(["analyze", str(tmp_path / "missing.json")], capsys)
    assert code == 1


def test_analyze_mismatch_exits_2(tmp_path, capsys, monkeypatch):
    import detfacet.cli as cli

    real = cli.hilbert_series_closed

    def off_by_one(dec, m, n):
        data = real(dec, m, n)
        return HilbertData(data.numerator, data.denominator_exponent, data.height, data.multiplicity + 1)

    monkeypatch.setattr(cli, "hilbert_series_closed", off_by_one)
    code, out, err = run_main(["analyze", write(tmp_path, "c.json", TWO), "--oracle"], capsys)
    assert code == 2
    assert "MISMATCH" in err and json.loads(out)["invariants"]["MISMATCH"] is True


def test_generate(tmp_path, capsys):
    k3 = write(tmp_path, "k3.json", {"vertices": 3, "edges": [[1, 2], [2, 3], [1, 3]]})
    out_path = tmp_path / "out.json"
    code, _, _ = run_main(["generate", "--graph", k3, "--m", "3", "--out", str(out_path)], capsys)
    assert code == 0
    cx = load_complex(out_path)
    assert len(cx.facets) == 3 and is_closed(cx)
    assert len(complex_graph(cx).edges) == 3
    edge = write(tmp_path, "edge.json", {"vertices": 2, "edges": [[1, 2]]})
    assert run_main(["generate", "--graph", edge, "--m", "2", "--out", str(out_path)], capsys)[0] == 0
    assert load_complex(out_path).facets == ((1, 2), (2, 3))
    k4 = write(tmp_path, "k4.json", {"vertices": 4, "edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]})
    code, _, err = run_main(["generate", "--graph", k4, "--m", "3", "--out", str(out_path)], capsys)
    assert code == 1 and "m >= |V(G)|" in err


def test_verify_commands(capsys):
    code, out, _ = run_main(["verify", "--identity", "pluecker", "--trials", "15", "--seed", "4"], capsys)
    assert code == 0 and "seed=4" in out and "PASS 15/15" in out
    code, out, _ = run_main(["verify", "--identity", "localization", "--trials", "5", "--seed", "4"], capsys)
    assert code == 0 and "PASS 5/5" in out
    code, out, err = run_main(["verify", "--identity", "pluecker", "--trials", "0"], capsys)
    assert code == 0 and "warning" in err


def test_verify_reports_first_counterexample(capsys, monkeypatch):
    import detfacet.cli as cli

    monkeypatch.setitem(cli.CHECKS, "pluecker", lambda rng: {"planted": rng.randint(0, 9)})
    code, out, _ = run_main(["verify", "--identity", "pluecker", "--trials", "3", "--seed", "1"], capsys)
    assert code == 2 and "FAIL" in out and '"trial": 0' in out


def test_verify_is_seeded():
    assert run_verify("pluecker", 5, 11) == run_verify("pluecker", 5, 11)


def test_report_determinism_across_threads():
    cx = validate(7, 3, [tuple(F) for F in INTRO["facets"]])
    first = render_report(analyze_report(cx, gb=True, oracle=True, seed=3))
    with ThreadPoolExecutor(max_workers=4) as pool:
        outs = list(pool.map(lambda _: render_report(analyze_report(cx, gb=True, oracle=True, seed=3)), range(8)))
    assert all(o == first for o in outs)


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "c.json", TWO)
    runs = [
        subprocess.run([sys.executable, "-m", "detfacet", "analyze", path, "--gb", "--seed", "5"],
                       capture_output=True, text=True, check=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["seed"] == 5
