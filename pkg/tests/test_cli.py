"""Command-line surface: examples, coverage of the operation map, determinism."""

import json

import pytest

from charseq.cli import build_parser, main
from charseq.constructions import fermat_curve, split_line
from charseq.pointlab import save_curve

P = 10007


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_macaulay_examples(capsys):
    assert run_json(capsys, "macaulay", "--c", "5", "--d", "2", "--next") == {"next": 7}
    rep = run_json(capsys, "macaulay", "--c", "5", "--d", "2")
    assert rep["terms"] == [[3, 2], [2, 1]]
    zero = run_json(capsys, "macaulay", "--zero-seq", "1,2,4")
    assert zero == {"ok": False, "violation": 2}


def test_minimal_and_link_examples(capsys):
    assert run_json(capsys, "minimal", "--d", "6", "--alpha", "13")["rel"] == "3,3,4,5,6,7"
    linked = run_json(
        capsys, "link", "--ambient", "0,1,2,3", "--rel", "2,2,3,3", "--s", "2"
    )
    assert linked["rel"] == "2,2,3,3"


def test_charseq_actions(capsys):
    out = run_json(capsys, "charseq", "--seq", "0,1,1,2", "--eval", "2")
    assert out["phi"] == 4
    out = run_json(capsys, "charseq", "--phi", "1,3,4,4,4", "--cone-dim", "1")
    assert out["entries"] == "0,1,1,2"
    out = run_json(capsys, "charseq", "--seq", "0,1,1,2", "--validate")
    assert out["passed"] is True
    out = run_json(capsys, "charseq", "--seq", "0,1,1,2", "--gorenstein")
    assert out["gorenstein_symmetric"] is True
    out = run_json(capsys, "charseq", "--seq", "0,1,1,2", "--cone-dim", "2", "--codim", "2", "--bound-codim2")
    assert out["within_bound"] is True
    out = run_json(capsys, "charseq", "--seq", "0,1,1,2", "--separation")
    assert out["separation_index"] == 0
    out = run_json(capsys, "charseq", "--seq", "0,1", "--included-in", "0,1,1,2")
    assert out["included"] is True
    out = run_json(capsys, "charseq", "--aligned-bound", "2", "--d", "6")
    assert out["bound"] == 4


def test_sequence_subcommands(capsys):
    assert run_json(capsys, "ci", "--degrees", "2,3")["entries"] == "0,1,1,2,2,3"
    out = run_json(capsys, "add-section", "--ambient", "0,1,2,3", "--rel", "2,2,3,3", "--s", "1")
    assert out["rel"] == "3,3,4,4"
    out = run_json(capsys, "split", "--ambient", "0,1,2,3", "--rel", "2,3,5,6", "--cone-dim", "2")
    assert out["high"]["entries"] == [5, 6]
    assert run_json(capsys, "genus", "--section", "0,1,1,2", "--alpha", "4")["genus"] == 1
    assert run_json(capsys, "halphen", "--alpha", "6", "--d", "3")["bound"] == 4
    assert run_json(capsys, "dim", "--r-alpha", "--d", "6", "--alpha", "13")["r_alpha"] == 5
    out = run_json(capsys, "classify", "--rel", "2,3,4,4,5,6", "--d", "6", "--alpha", "9", "--i", "4")
    assert out["case"] == "tail"
    out = run_json(capsys, "realize", "--check-admissible", "3,3,4,5,6,7")
    assert out["admissible"] is True
    out = run_json(capsys, "realize", "--add-case", "5", "--rel", "3,3,4,4,5,5")
    assert out["rel"] == "3,3,4,5,5,5"


def test_rcs_sequence_modes(capsys):
    out = run_json(capsys, "rcs", "--rel", "2,2,3,3", "--ambient", "0,1,2,3", "--cone-dim", "2", "--to-abs")
    assert out["entries"] == "0,1,1,2"
    out = run_json(capsys, "rcs", "--rel", "2,2,3,3", "--ambient", "0,1,2,3", "--degree")
    assert out["degree"] == 4
    out = run_json(capsys, "rcs", "--rel", "2,2,3,3", "--ambient", "0,1,2,3", "--cone-dim", "2", "--eval", "2")
    assert out["phi"] == 4
    out = run_json(capsys, "rcs", "--abs-seq", "0,1,1,2", "--ambient", "0,1,2,3", "--cone-dim", "2")
    assert out["rel"] == "2,2,3,3"
    out = run_json(capsys, "rcs", "--monomials", "3")
    assert len(out["monomials"]) == 10
    out = run_json(capsys, "rcs", "--phi-curve", "4", "--eval", "4")
    assert out["phi"] == 14


def test_geometry_pipeline_through_files(tmp_path, capsys):
    X = fermat_curve(P, 4)
    curve_file = tmp_path / "quartic.txt"
    save_curve(curve_file, X)
    points_file = tmp_path / "pts.txt"

    out = run_json(
        capsys, "rcs", "--curve", str(curve_file), "--random", "6", "--seed", "3",
        "--out", str(points_file),
    )
    assert out["points"] == 6

    out = run_json(capsys, "rcs", "--curve", str(curve_file), "--points", str(points_file))
    assert out["ambient"] == "0,1,2,3"
    measured_rel = out["rel"]

    out = run_json(capsys, "rcs", "--points", str(points_file), "--abs")
    assert out["cone_dim"] == 1

    out = run_json(capsys, "dim", "--curve", str(curve_file), "--points", str(points_file))
    assert out["dim"] >= 0

    line, pts = split_line(X, seed=5)
    line_file = tmp_path / "line.txt"
    save_curve(line_file, line)
    section_file = tmp_path / "section.txt"
    out = run_json(
        capsys, "rcs", "--curve", str(curve_file), "--section-by", str(line_file),
        "--out", str(section_file),
    )
    assert out["points"] == 4

    out = run_json(
        capsys, "rcs", "--curve", str(curve_file), "--points", str(section_file)
    )
    assert out["rel"] == "1,2,3,4"

    out = run_json(
        capsys, "filtration", "--curve", str(curve_file), "--points", str(section_file),
        "--t", "0", "--candidates", str(section_file),
    )
    assert out["count"] == 4
    assert measured_rel  # pipeline produced a sequence


def test_realize_and_scan_cli(tmp_path, capsys):
    from charseq.verify import corpus_curve

    X = corpus_curve(101, 4)
    curve_file = tmp_path / "quartic101.txt"
    save_curve(curve_file, X)
    out_file = tmp_path / "realized.txt"
    out = run_json(
        capsys, "realize", "--curve", str(curve_file), "--target", "2,2,3,3",
        "--seed", "1", "--out", str(out_file),
    )
    assert out["rel"] == "2,2,3,3"
    assert out["points"] == 4

    out = run_json(
        capsys, "conjecture-scan", "--curve", str(curve_file), "--s", "1",
        "--trials", "5", "--seed", "2",
    )
    assert out["violations"] == 0


def test_byte_identical_output(capsys):
    args = ("minimal", "--d", "6", "--alpha", "13")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_exit_codes(capsys):
    code, _, err = run_cli(capsys, "macaulay", "--c", "0", "--d", "2")
    assert code == 1 and "error" in err
    code, _, err = run_cli(capsys, "link", "--ambient", "0,1,2,3", "--rel", "2,2,3,3", "--s", "1")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["macaulay", "--d", "oops"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_table_format(capsys):
    code, out, _ = run_cli(capsys, "halphen", "--alpha", "6", "--d", "3", "--format", "table")
    assert code == 0
    assert out.strip() == "bound  4"


def test_modulus_env_override(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("CHARSEQ_MODULUS", "101")
    from charseq.cli import _modulus
    import argparse

    args = argparse.Namespace(modulus=10007)
    assert _modulus(args) == 101


OPERATION_MAP = {
    # every library operation is reachable through exactly one subcommand
    "macaulay_rep": "macaulay",
    "macaulay_next": "macaulay",
    "is_zero_sequence": "macaulay",
    "phi_from_charseq": "charseq",
    "charseq_from_phi": "charseq",
    "validate_abs": "charseq",
    "bound_codim2": "charseq",
    "aligned_bound": "charseq",
    "separation_index": "charseq",
    "is_gorenstein_symmetric": "charseq",
    "seq_included": "charseq",
    "ci_charseq": "ci",
    "measure_rcs": "rcs",
    "measure_abs": "rcs",
    "abs_from_rel": "rcs",
    "rel_from_abs": "rcs",
    "rel_degree": "rcs",
    "phi_rel": "rcs",
    "phi_points": "rcs",
    "phi_plane_curve": "rcs",
    "monomial_basis": "rcs",
    "random_points_on_curve": "rcs",
    "section_points": "rcs",
    "link": "link",
    "add_section": "add-section",
    "split_on_gap": "split",
    "minimal_delta_seq": "minimal",
    "genus_acm_curve": "genus",
    "halphen_bound": "halphen",
    "dim_linear_system": "dim",
    "r_alpha": "dim",
    "classify_maximal": "classify",
    "classify_equal_phi": "classify",
    "realize": "realize",
    "is_admissible": "realize",
    "add_case": "realize",
    "filtration_points": "filtration",
    "can_add_at_level": "filtration",
    "conjecture_scan": "conjecture-scan",
}


def test_every_operation_reachable_from_exactly_one_subcommand():
    parser = build_parser()
    subcommands = set()
    for action in parser._actions:
        if hasattr(action, "choices") and action.choices:
            subcommands = set(action.choices)
    assert set(OPERATION_MAP.values()) <= subcommands
    assert "verify" in subcommands
    # one home per operation
    assert len(OPERATION_MAP) == len(set(OPERATION_MAP))
