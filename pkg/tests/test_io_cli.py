import json

import numpy as np
import pytest

from gelfand_stockwell import catalog, io
from gelfand_stockwell.cli import main
from gelfand_stockwell.errors import ParseError, SchemaError
from gelfand_stockwell.spherical import random_bi_invariant


@pytest.fixture
def sym3_files(tmp_path):
    e = catalog.get_pair("sym-3")
    rng = np.random.default_rng(0)
    f, th = random_bi_invariant(e.pair, rng, 2)
    io.write_signal(tmp_path / "f.csv", f)
    io.write_signal(tmp_path / "w.csv", th / np.linalg.norm(th))
    return tmp_path, f


def test_signal_round_trip_is_lossless(tmp_path):
    f = np.random.default_rng(1).standard_normal(7) * (1 + 1j) / 3
    for name, fmt in (("s.csv", "csv"), ("s.json", "json")):
        io.write_signal(tmp_path / name, f, fmt)
        np.testing.assert_array_equal(io.read_signal(tmp_path / name, 7), f)


def test_coeff_round_trip(tmp_path):
    c = np.random.default_rng(2).standard_normal((5, 3)) + 1j
    for name, fmt in (("c.csv", "csv"), ("c.json", "json")):
        io.write_coeffs(tmp_path / name, c, fmt)
        np.testing.assert_array_equal(io.read_coeffs(tmp_path / name, (5, 3)), c)


def test_real_json_arrays(tmp_path):
    (tmp_path / "s.json").write_text("[1, 2, 3]")
    np.testing.assert_array_equal(io.read_signal(tmp_path / "s.json"), [1, 2, 3])


def test_parse_error_reports_line(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("element_index,re,im\n0,1,0\n1,oops,0\n")
    with pytest.raises(ParseError) as info:
        io.read_signal(p)
    assert info.value.line == 3
    p.write_text("element_index,re,im\n0,1,0\n0,2,0\n")
    with pytest.raises(ParseError):
        io.read_signal(p)


def test_schema_errors(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("idx,re,im\n0,1,0\n")
    with pytest.raises(SchemaError):
        io.read_signal(p)
    p.write_text("element_index,re,im\n0,1,0\n2,1,0\n")
    with pytest.raises(SchemaError):
        io.read_signal(p)
    p.write_text("element_index,re,im\n0,1,0\n")
    with pytest.raises(SchemaError):
        io.read_signal(p, order=4)
    with pytest.raises(SchemaError):
        io.pair_from_json({"order": 2})


def test_pair_json_round_trip(tmp_path):
    e = catalog.get_pair("dihedral-6")
    path = tmp_path / "d6.json"
    path.write_text(json.dumps(io.pair_to_json(e.pair.group, e.pair.k, e.automorphisms)))
    name, pair, dual, auts = io.load_pair(str(path))
    assert name == "d6" and pair.certified
    assert list(auts) == list(e.automorphisms)
    np.testing.assert_allclose(dual.weights, e.dual.weights, atol=1e-14)


def test_cli_pairs(capsys, tmp_path):
    assert main(["pairs", "list"]) == 0
    assert "sym-5" in capsys.readouterr().out
    assert main(["pairs", "show", "sym-3"]) == 0
    out = capsys.readouterr().out
    assert "0.166667" in out and "-0.5" in out
    assert main(["pairs", "export", "cyclic-4", "-o", str(tmp_path / "c4.json")]) == 0
    assert json.loads((tmp_path / "c4.json").read_text())["order"] == 4
    assert main(["pairs", "show", "nope"]) == 2


def test_cli_analyze_synthesize_round_trip(sym3_files):
    d, f = sym3_files
    assert main(["analyze", "sym-3", str(d / "f.csv"), str(d / "w.csv"), "id", "-o", str(d / "c.csv")]) == 0
    side = json.loads((d / "c.json").read_text())
    assert side["signal_l2"] == pytest.approx(np.linalg.norm(f))
    assert main(["synthesize", "sym-3", str(d / "c.csv"), str(d / "w.csv"), "id", "-o", str(d / "back.csv")]) == 0
    back = io.read_signal(d / "back.csv", 6)
    # nonabelian pair: inversion is not exact, but the output stays bi-invariant
    cosets = catalog.get_pair("sym-3").pair.cosets
    np.testing.assert_allclose(back, cosets.expand(cosets.class_means(back)), atol=1e-14)


def test_cli_cyclic_round_trip(tmp_path):
    rng = np.random.default_rng(4)
    f = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    io.write_signal(tmp_path / "f.csv", f)
    io.write_signal(tmp_path / "w.csv", np.exp(-np.arange(8.0)))
    assert main(["analyze", "cyclic-8", str(tmp_path / "f.csv"), str(tmp_path / "w.csv"), "mul-3",
                 "--format", "json", "-o", str(tmp_path / "c.json")]) == 0
    assert (tmp_path / "c.meta.json").exists()
    assert main(["synthesize", "cyclic-8", str(tmp_path / "c.json"), str(tmp_path / "w.csv"), "mul-3",
                 "-o", str(tmp_path / "b.csv")]) == 0
    np.testing.assert_allclose(io.read_signal(tmp_path / "b.csv"), f, atol=1e-10)


def test_cli_spectrum_and_localize(sym3_files, capsys):
    d, f = sym3_files
    assert main(["spectrum", "sym-3", str(d / "f.csv")]) == 0
    assert capsys.readouterr().out.startswith("phi_index,weight,re,im")
    io.write_coeffs(d / "u.csv", np.ones((6, 2)))
    assert main(["localize", "sym-3", str(d / "f.csv"), str(d / "w.csv"), str(d / "u.csv"), "id",
                 "-o", str(d / "out.csv")]) == 0
    report = json.loads((d / "out.json").read_text())
    assert report["bound_margins"]["4.3"] >= -1e-10
    assert report["adjoint_residual"] <= 1e-10


def test_cli_errors(sym3_files, capsys):
    d, _ = sym3_files
    assert main(["analyze", "sym-3", str(d / "f.csv"), str(d / "w.csv"), "mul-9"]) == 2
    assert main(["spectrum", "sym-3", str(d / "missing.csv")]) == 2
    assert main(["spectrum", "cyclic-4", str(d / "f.csv")]) == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert "error" in capsys.readouterr().err


def test_cli_verify(tmp_path, capsys):
    assert main(["verify", "cyclic-4", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["metadata"]["seed"] == 42
    assert len(data["records"]) == 2 * 13
    assert main(["--seed", "7", "verify", "sym-3", "-o", str(tmp_path / "r.json")]) == 0
    assert json.loads((tmp_path / "r.json").read_text())["metadata"]["seed"] == 7
    assert main(["verify", "sym-3", "--tol", "1e-300"]) == 1
