"""End-to-end checks of the command line interface via main(argv)."""
import json

import pytest

from sunint.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------- coeffs

def test_coeffs_shifted_table_json(capsys):
    code, payload = run_json(capsys, "coeffs", "--family", "su-shifted",
                             "--n", "2")
    assert code == 0
    assert payload["family"] == "su-shifted"
    entries = {e["partition"]: e["value"] for e in payload["entries"]}
    assert entries == {"1^2": "(N + 1)/N", "2^1": "-1/N"}


def test_coeffs_default_method_weingarten(capsys):
    code, payload = run_json(capsys, "coeffs", "--family", "weingarten",
                             "--n", "1")
    assert code == 0
    assert payload["entries"] == [{"partition": "1^1", "value": "1/N"}]


def test_coeffs_recursion_agrees_with_default(capsys):
    _, by_char = run_json(capsys, "coeffs", "--family", "weingarten",
                          "--n", "3")
    _, by_rec = run_json(capsys, "coeffs", "--family", "weingarten",
                         "--n", "3", "--method", "recursion")
    assert by_char == by_rec


def test_coeffs_csv_and_latex(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "weingarten",
                       "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "partition,value"
    assert "1^2,1/(N^2 - 1)" in lines

    code, out, _ = run(capsys, "coeffs", "--family", "su-shifted",
                       "--n", "2", "--format", "latex")
    assert code == 0
    assert out.startswith(r"\begin{array}")
    assert r"[2^1] & \frac{-1}{N} \\" in out


def test_coeffs_method_family_mismatch(capsys):
    code, out, err = run(capsys, "coeffs", "--family", "weingarten",
                         "--n", "2", "--method", "shift")
    assert code == 2
    assert out == ""
    assert "does not apply" in err


def test_coeffs_weight_out_of_range(capsys):
    code, _, _ = run(capsys, "coeffs", "--family", "weingarten", "--n", "0")
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


# ---------------------------------------------------------------- largen

def test_largen_wd_order_3(capsys):
    code, payload = run_json(capsys, "largen", "wd", "--order", "3")
    assert code == 0
    assert payload["method"] == "closed"
    got = {(t["grade"], t["partition"]): t["coefficient"]
           for t in payload["terms"]}
    assert got == {
        (1, "1^1"): "1",
        (2, "1^2"): "1/2", (2, "2^1"): "-1/2",
        (3, "1^3"): "1/3", (3, "1^1 2^1"): "-1", (3, "3^1"): "2/3",
    }
    assert all(t["kappa_power"] == t["grade"] for t in payload["terms"])


def test_largen_ww_order_2(capsys):
    code, payload = run_json(capsys, "largen", "ww", "--order", "2")
    assert code == 0
    assert payload["trace_symbol"] == "tau"
    got = {(t["grade"], t["partition"]): t["coefficient"]
           for t in payload["terms"]}
    assert got == {(1, "1^1"): "1", (2, "1^2"): "1/2", (2, "2^1"): "-1/2"}
    assert all(t["kappa_power"] == 2 * t["grade"] for t in payload["terms"])


def test_largen_compare_routes_identical(capsys):
    code, payload = run_json(capsys, "largen", "wd", "--order", "4",
                             "--compare")
    assert code == 0
    assert payload["compare"]["identical"] is True
    assert set(payload["compare"]["methods"]) == {"fixedpoint", "finite-n"}
    assert payload["compare"]["mismatches"] == []


def test_largen_finite_n_order_cap(capsys):
    code, out, err = run(capsys, "largen", "wd", "--order", "5",
                         "--method", "finite-n")
    assert code == 2
    assert "order <= 4" in err


def test_largen_ww_rejects_compare(capsys):
    code, _, _ = run(capsys, "largen", "ww", "--order", "2", "--compare")
    assert code == 2


# -------------------------------------------------------------------- mc

def test_mc_charge_mismatch_sector(capsys):
    code, payload = run_json(capsys, "mc", "--p", "2", "--n", "1",
                             "--N", "3", "--samples", "2000",
                             "--seed", "11")
    assert code == 0
    assert payload["sector"] == "charge-mismatch"
    assert payload["exact"] == [0.0, 0.0]
    assert payload["comparison"]["pass"] is True


def test_mc_balanced_with_matrices_file(capsys, tmp_path):
    eye = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
    path = tmp_path / "src.json"
    path.write_text(json.dumps({"N": 2, "J": eye, "K": eye}))
    code, payload = run_json(capsys, "mc", "--p", "1", "--n", "1",
                             "--N", "2", "--group", "unitary",
                             "--samples", "4000", "--seed", "5",
                             "--matrices", str(path))
    assert code == 0
    assert payload["sector"] == "balanced"
    # tr(U) tr(U-dagger) averages to exactly 1 on U(2)
    assert payload["exact"] == [1.0, 0.0]
    assert payload["comparison"]["pass"] is True


def test_mc_matrices_dimension_mismatch(capsys, tmp_path):
    eye = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
    path = tmp_path / "src.json"
    path.write_text(json.dumps({"N": 2, "J": eye, "K": eye}))
    code, _, err = run(capsys, "mc", "--p", "1", "--n", "1", "--N", "3",
                       "--samples", "2000", "--matrices", str(path))
    assert code == 2
    assert "N=2" in err


def test_mc_output_deterministic(capsys):
    args = ("mc", "--p", "1", "--n", "1", "--N", "2", "--samples", "2000",
            "--seed", "9")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


# ---------------------------------------------------------------- tensor

def test_tensor_balanced_pair(capsys):
    code, payload = run_json(capsys, "tensor", "--N", "3",
                             "--u", "1:1", "--udagger", "1:1")
    assert code == 0
    assert payload["sector"] == "balanced"
    assert payload["exact"] == "1/3"


def test_tensor_epsilon_sector_signs(capsys):
    code, payload = run_json(capsys, "tensor", "--N", "2",
                             "--u", "1:1,2:2")
    assert code == 0
    assert payload["sector"] == "epsilon"
    assert payload["exact"] == "1/2"

    _, payload = run_json(capsys, "tensor", "--N", "2", "--u", "1:2,2:1")
    assert payload["exact"] == "-1/2"


def test_tensor_charge_mismatch_is_zero(capsys):
    code, payload = run_json(capsys, "tensor", "--N", "3", "--u", "1:1")
    assert code == 0
    assert payload["sector"] == "charge-mismatch"
    assert payload["exact"] == "0"


def test_tensor_unbalanced_unitary_is_zero(capsys):
    code, payload = run_json(capsys, "tensor", "--N", "3", "--u", "1:1",
                             "--group", "unitary")
    assert code == 0
    assert payload["sector"] == "unbalanced"
    assert payload["exact"] == "0"


def test_tensor_balanced_high_weight_has_no_exact_value(capsys):
    code, payload = run_json(capsys, "tensor", "--N", "2",
                             "--u", "1:1,2:2", "--udagger", "1:1,2:2")
    assert code == 0
    assert payload["sector"] == "balanced-high-weight"
    assert payload["exact"] is None


def test_tensor_mc_cross_check(capsys):
    code, payload = run_json(capsys, "tensor", "--N", "2",
                             "--u", "1:1", "--udagger", "1:1",
                             "--mc-samples", "3000", "--seed", "4")
    assert code == 0
    assert payload["exact"] == "1/2"
    assert payload["comparison"]["pass"] is True


def test_tensor_bad_index_syntax(capsys):
    code, _, err = run(capsys, "tensor", "--N", "2", "--u", "1-1")
    assert code == 2


# ---------------------------------------------------------------- verify

def test_verify_tables_suite(capsys):
    code, payload = run_json(capsys, "verify", "--suite", "tables")
    assert code == 0
    assert payload["pass"] is True
    names = [c["name"] for c in payload["suites"]["tables"]["checks"]]
    assert "weingarten n=4 vs packaged" in names
    assert "su-shifted n=5 dual route" in names


def test_verify_shift_and_largen_suites(capsys):
    code, payload = run_json(capsys, "verify", "--suite", "shift")
    assert code == 0 and payload["pass"] is True
    code, payload = run_json(capsys, "verify", "--suite", "largen")
    assert code == 0 and payload["pass"] is True


def test_verify_mc_suite_small(capsys):
    code, payload = run_json(capsys, "verify", "--suite", "mc",
                             "--samples", "3000", "--seed", "2")
    assert code == 0
    assert payload["pass"] is True
    assert len(payload["suites"]["mc"]["checks"]) == 9


def test_output_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "table.json"
    code, out, _ = run(capsys, "coeffs", "--family", "weingarten",
                       "--n", "1", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["entries"][0]["value"] == "1/N"
