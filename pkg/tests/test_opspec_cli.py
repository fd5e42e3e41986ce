import json
import os
from fractions import Fraction

import pytest

from weylprop.cli import main
from weylprop.opspec import (
    SpecError, dump_family, dump_operator, load_family, load_operator,
)
from weylprop.weyl import SymOp, WeylElement
from weylprop.graded import GradedBasis
from weylprop.correspondence import weyl_to_family


def _spec_identity():
    return {
        "basis": [{"name": "q", "degree": 0}],
        "degree": 0,
        "reduced": True,
        "components": [{"g": 0, "in": ["q"], "out": ["q"], "coeff": "1/1"}],
    }


def _spec_differential():
    return {
        "basis": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}],
        "degree": -1,
        "reduced": True,
        "components": [{"g": 0, "in": ["y"], "out": ["x"], "coeff": "1"}],
    }


def test_operator_roundtrip():
    element, reduced = load_operator(_spec_identity())
    assert reduced
    assert element.component(0, 1, 1) is not None
    again, _ = load_operator(dump_operator(element))
    assert again == element


def test_duplicate_records_rejected():
    spec = _spec_identity()
    spec["components"] = spec["components"] * 2
    with pytest.raises(SpecError):
        load_operator(spec)


def test_non_canonical_monomial_rejected():
    spec = {
        "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
        "degree": 0, "reduced": True,
        "components": [{"g": 0, "in": ["b", "a"], "out": ["a", "a"],
                        "coeff": "1"}],
    }
    with pytest.raises(SpecError):
        load_operator(spec)


def test_family_roundtrip_and_symmetry_check():
    element, _ = load_operator(_spec_differential())
    fam = weyl_to_family(element)
    data = dump_family(fam)
    again = load_family(data)
    assert again == fam
    # break the symmetry: a lone off-diagonal tensor entry on two inputs
    broken = {
        "basis": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}],
        "entries": [{"r": 2, "t": 1, "g": 0, "in": ["x", "y"], "out": ["x"],
                     "coeff": "1"}],
    }
    with pytest.raises(SpecError):
        load_family(broken)


def _write(tmp_path, name, payload):
    path = os.path.join(str(tmp_path), name)
    with open(path, "w") as fh:
        json.dump(payload, fh)
    return path


def test_cli_star_and_exit_codes(tmp_path, capsys):
    ident = _write(tmp_path, "id.json", _spec_identity())
    assert main(["star", ident, ident, "--gmax", "1"]) == 0
    out = capsys.readouterr().out
    assert "q_q q_q p_q p_q + h q_q p_q" in out
    assert "oracle agreement: true" in out


def test_cli_star_basis_mismatch(tmp_path, capsys):
    ident = _write(tmp_path, "id.json", _spec_identity())
    diff = _write(tmp_path, "d.json", _spec_differential())
    assert main(["star", ident, diff]) == 2


def test_cli_square_zero_verdicts(tmp_path, capsys):
    diff = _write(tmp_path, "d.json", _spec_differential())
    assert main(["square-zero", diff]) == 0
    ident = _write(tmp_path, "id.json", _spec_identity())
    assert main(["square-zero", ident]) == 1
    out = capsys.readouterr().out
    assert "hbar^1" in out and "(i,j)=(1,1)" in out
    unreduced = _spec_identity()
    unreduced["reduced"] = False
    unreduced["components"] = [{"g": 0, "in": [], "out": ["q", "q"],
                                "coeff": "1"}]
    bad = _write(tmp_path, "u.json", unreduced)
    assert main(["square-zero", bad]) == 2


def test_cli_verify_small_suites(capsys):
    assert main(["verify", "--suite", "coassoc", "--mmax", "2", "--nmax", "2",
                 "--genusmax", "1"]) == 0
    assert main(["verify", "--suite", "dsq", "--rtsum", "4", "--genusmax", "1",
                 "--pmax", "2"]) == 0
    assert main(["verify", "--suite", "theorem", "--count", "5",
                 "--aritymax", "2", "--genusmax", "1"]) == 0
    assert main(["verify", "--suite", "compare-circk", "--aritymax", "2"]) == 0
    out = capsys.readouterr().out
    assert "0 failures" in out


def test_cli_homology_grid_and_relations(tmp_path, capsys):
    code = main(["homology", "--grid", "--rmax", "3", "--tmax", "3",
                 "--genusmax", "1", "--rtsum", "4", "--format", "csv"])
    assert code == 0
    out = capsys.readouterr().out
    assert "2,1,0,-1,1,1" in out
    assert "relation involutivity at (1, 1, 1): boundary" in out


def test_cli_homology_truncation_exit(tmp_path):
    code = main(["homology", "--r", "2", "--t", "2", "--g", "1",
                 "--pmax", "1"])
    assert code == 3
    code = main(["homology", "--r", "2", "--t", "2", "--g", "1", "--pmax", "1",
                 "--allow-truncated", "--out",
                 os.path.join(str(tmp_path), "t.csv")])
    assert code == 0


def test_cli_homology_deterministic_across_jobs(tmp_path):
    out1 = os.path.join(str(tmp_path), "a.csv")
    out2 = os.path.join(str(tmp_path), "b.csv")
    args = ["homology", "--grid", "--rmax", "2", "--tmax", "2",
            "--genusmax", "1", "--format", "csv"]
    assert main(args + ["--out", out1, "--jobs", "1"]) == 0
    assert main(args + ["--out", out2, "--jobs", "2"]) == 0
    with open(out1, "rb") as fh:
        a = fh.read()
    with open(out2, "rb") as fh:
        b = fh.read()
    assert a == b


def test_cli_cache_dir_used(tmp_path):
    cache = os.path.join(str(tmp_path), "cache")
    assert main(["homology", "--r", "2", "--t", "1", "--g", "0",
                 "--cache-dir", cache, "--out",
                 os.path.join(str(tmp_path), "o.csv")]) == 0
    assert any(name.startswith("basis-") for name in os.listdir(cache))
