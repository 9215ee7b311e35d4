import hashlib
import json

import pytest

from hadsplit.cli import UnknownDataset, bundled_data, main
from hadsplit.core import parse_matrix
from hadsplit.latin import parse_latin
from hadsplit.splitting import direct_srg_params


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------- datasets


def test_bundled_datasets_are_srgs():
    assert direct_srg_params(bundled_data("lattice-4x4")).astuple() == (16, 6, 2, 2)
    assert direct_srg_params(bundled_data("shrikhande")).astuple() == (16, 6, 2, 2)
    assert direct_srg_params(bundled_data("srg-36-10-4-2")).astuple() == (36, 10, 4, 2)
    assert bundled_data("lattice-4x4.txt") == bundled_data("lattice-4x4")


def test_bundled_unknown_name():
    with pytest.raises(UnknownDataset):
        bundled_data("petersen")


def test_data_dir_override(tmp_path, monkeypatch):
    (tmp_path / "custom.txt").write_text("1 1\n+\n")
    (tmp_path / "shrikhande.txt").write_text("1 1\n-\n")
    monkeypatch.setenv("HADSPLIT_DATA_DIR", str(tmp_path))
    assert bundled_data("custom")[0, 0] == 1
    # the override shadows a bundled name
    assert bundled_data("shrikhande")[0, 0] == -1
    monkeypatch.delenv("HADSPLIT_DATA_DIR")
    assert bundled_data("shrikhande").nrows == 16


# ---------------------------------------------------------------- construct


def test_construct_sylvester_stdout(capsys):
    code, out, _ = run(capsys, "construct", "sylvester", "--m", "2")
    assert code == 0
    body, label = out.rsplit("Sylvester matrix of order 4", 1)
    assert label.strip() == ""
    m = parse_matrix(body)
    assert m.shape == (4, 4)


def test_construct_check_round_trip(capsys, tmp_path):
    f = tmp_path / "twin.txt"
    code, out, _ = run(capsys, "construct", "twin", "--m", "2", "--out", str(f))
    assert code == 0
    assert "twin-1: params (16, 6, 2, -2) rows 1,4,5,6,9,15" in out
    code, out, _ = run(capsys, "check", "--input", str(f), "--rows", "1,4,5,6,9,15")
    assert code == 0
    assert "split parameters (n, ell, a, b) = (16, 6, 2, -2)" in out
    assert "branch: seidel (also case-a)" in out
    assert "matches construction: twin-sylvester m=2" in out
    assert "check seidel_ok: pass" in out


def test_check_row_ranges(capsys, tmp_path):
    f = tmp_path / "h.txt"
    run(capsys, "construct", "sylvester", "--m", "2", "--out", str(f))
    code, out, _ = run(capsys, "check", "--input", str(f), "--rows", "1-3")
    assert code == 0
    assert "(4, 3, -1, -1)" in out


def test_check_not_splittable_exits_one(capsys, tmp_path):
    f = tmp_path / "h.txt"
    run(capsys, "construct", "sylvester", "--m", "4", "--out", str(f))
    code, out, _ = run(capsys, "check", "--input", str(f), "--rows", "0,1,2")
    assert code == 1
    assert "not a balanced split" in out


def test_construct_skew_core(capsys):
    code, out, _ = run(capsys, "construct", "skew-core", "--q", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["data"]["n"] == 12
    assert payload["data"]["witness"] == "skew-core q=3"


def test_construct_kron_small(capsys):
    code, out, _ = run(
        capsys, "construct", "kron", "--sylvester", "2", "--variant", "small", "--json"
    )
    assert code == 0
    data = json.loads(out)["data"]
    assert (data["n"], data["ell"], data["a"], data["b"]) == (16, 6, 2, -2)


def test_construct_unknown_dataset_exits_two(capsys):
    code, _, err = run(capsys, "check", "--input", "no-such-dataset", "--rows", "0")
    assert code == 2
    assert "error:" in err


# ------------------------------------------------------------------ analyze


def test_analyze_seidel(capsys):
    code, out, _ = run(capsys, "analyze", "seidel", "--n", "16", "--ell", "6", "--a", "2")
    assert code == 0
    assert "block graph: (16, 6, 2, 2)" in out
    assert "eigenvalue 5 with multiplicity 6" in out


def test_analyze_seidel_missing_option_exits_two(capsys):
    code, _, err = run(capsys, "analyze", "seidel", "--n", "16")
    assert code == 2
    assert "--ell" in err and "--a" in err


def test_analyze_seidel_infeasible_exits_one(capsys):
    code, _, err = run(capsys, "analyze", "seidel", "--n", "16", "--ell", "7", "--a", "2")
    assert code == 1


def test_analyze_srg_both_cases(capsys):
    code, out, _ = run(capsys, "analyze", "srg", "--n", "16", "--ell", "9", "--a", "1")
    assert code == 0
    assert "b = -3" in out and "(16, 9, 4, 6)" in out
    code, out, _ = run(
        capsys, "analyze", "srg", "--case", "b", "--n", "16", "--ell", "4", "--a", "4"
    )
    assert code == 0
    assert "b = 0" in out


def test_analyze_equiangular(capsys):
    code, out, _ = run(
        capsys, "analyze", "equiangular", "--n", "16", "--ell", "6", "--a", "2", "--b=-2"
    )
    assert code == 0
    assert "6 equiangular lines with squared cosine 1/9" in out
    assert "(attained)" in out


def test_analyze_unbiased_and_regular(capsys, tmp_path):
    f = tmp_path / "twin.txt"
    run(capsys, "construct", "twin", "--m", "2", "--out", str(f))
    code, out, _ = run(
        capsys, "analyze", "unbiased", "--input", str(f), "--rows", "1,4,5,6,9,15"
    )
    assert code == 0
    assert "unbiased partner of order 16" in out
    code, out, _ = run(
        capsys, "analyze", "regular", "--input", str(f), "--rows", "1,4,5,6,9,15"
    )
    assert code == 0
    assert "constant row sum [4]" in out


def test_analyze_diag_and_srg16(capsys, tmp_path):
    f = tmp_path / "h.txt"
    run(capsys, "construct", "sylvester", "--m", "4", "--out", str(f))
    code, out, _ = run(
        capsys, "analyze", "diag", "--input", str(f), "--graph", "lattice-4x4"
    )
    assert code == 0
    assert "6: 1" in out and "-2: 9" in out
    code, out, _ = run(capsys, "analyze", "srg16", "--graph", "shrikhande")
    assert code == 0
    assert "shrikhande" in out


def test_analyze_search(capsys, tmp_path):
    f = tmp_path / "twin.txt"
    run(capsys, "construct", "twin", "--m", "2", "--out", str(f))
    code, out, _ = run(capsys, "analyze", "search", "--input", str(f), "--ell", "6")
    assert code == 0
    assert "params (16, 6, 2, -2)" in out


def test_analyze_search_none_found(capsys, tmp_path):
    f = tmp_path / "h.txt"
    run(capsys, "construct", "skew-core", "--q", "3", "--out", str(f))
    code, out, _ = run(capsys, "analyze", "search", "--input", str(f), "--ell", "2")
    assert code == 1
    assert "no balanced split on 2 rows" in out


# ---------------------------------------------------------------- enumerate


def test_enumerate_table1_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "table1", "--max-n", "1024")
    assert code == 0
    assert "28 parameter sets" in out
    assert "[twin-sylvester m=2]" in out
    code, out, _ = run(capsys, "enumerate", "table1", "--max-n", "1024", "--all")
    assert "29 parameter sets" in out


def test_enumerate_table2_json_digest_is_stable(capsys):
    code, out1, _ = run(capsys, "enumerate", "table2", "--max-n", "64", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "enumerate", "table2", "--max-n", "64", "--json")
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["data"]["count"] == 14
    digest = payload.pop("digest")
    assert digest == "4e35ce3e820668ca1d9a12030ffbac08aab38fa464891e7229c85739bc194ec3"
    again = hashlib.sha256(json.dumps(payload, sort_keys=True, default=str).encode()).hexdigest()
    assert digest == again


# ----------------------------------------------------------------- nonexist


def test_nonexist_certifies(capsys):
    code, out, _ = run(
        capsys, "nonexist", "--graph", "srg-36-10-4-2", "--ell", "10", "--a", "4", "--b=-2"
    )
    assert code == 0
    assert "no split with these parameters embeds this graph" in out


def test_nonexist_inconclusive(capsys):
    code, out, _ = run(
        capsys, "nonexist", "--graph", "lattice-4x4", "--ell", "6", "--a", "2", "--b=-2"
    )
    assert code == 1
    assert "does not rule the parameters out" in out


# -------------------------------------------------------------------- latin


def test_latin_circle_check_round_trip(capsys, tmp_path):
    f = tmp_path / "circle.txt"
    code, _, _ = run(capsys, "latin", "circle", "--v", "6", "--out", str(f))
    assert code == 0
    code, out, _ = run(capsys, "latin", "check", "--input", str(f))
    assert code == 0
    assert "latin: True" in out
    assert "symmetric: True" in out


def test_latin_affine_pick_and_ufs(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "latin", "affine", "--q", "5", "--pick", "0", "--out", str(a))
    run(capsys, "latin", "affine", "--q", "5", "--pick", "1", "--out", str(b))
    code, out, _ = run(capsys, "latin", "check", "--input", str(a), "--against", str(b))
    assert code == 0
    assert "uniformly one-agreeing" in out and ": True" in out
    code, out, _ = run(capsys, "latin", "check", "--input", str(a), "--against", str(a))
    assert code == 1
    assert "one-agreement" in out


def test_latin_compose_and_diagfix(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "latin", "affine", "--q", "7", "--pick", "0", "--out", str(a))
    run(capsys, "latin", "affine", "--q", "7", "--pick", "1", "--out", str(b))
    c = tmp_path / "c.txt"
    code, _, _ = run(capsys, "latin", "compose", "--input", str(a), "--against", str(b), "--out", str(c))
    assert code == 0
    assert parse_latin(c.read_text()).is_latin()
    d = tmp_path / "d.txt"
    code, _, _ = run(capsys, "latin", "diagfix", "--input", str(a), "--symbol", "0", "--out", str(d))
    assert code == 0
    assert parse_latin(d.read_text()).has_constant_diagonal(0)


def test_latin_affine_listing(capsys):
    code, out, _ = run(capsys, "latin", "affine", "--q", "4")
    assert code == 0
    assert "3 pairwise uniform squares of order 4" in out


# ------------------------------------------------------------------- scheme


def test_scheme_build4_and_verify_round_trip(capsys, tmp_path):
    d = tmp_path / "classes"
    code, out, _ = run(capsys, "scheme", "build4", "--twin-delete", "2", "--out-dir", str(d))
    assert code == 0
    assert "4-class symmetric scheme on 160 points" in out
    files = ",".join(str(d / f"class-{i}.txt") for i in range(5))
    code, out, _ = run(capsys, "scheme", "verify", "--inputs", files)
    assert code == 0
    assert "4-class symmetric scheme on 160 points" in out


def test_scheme_build4n_eig(capsys):
    code, out, _ = run(capsys, "scheme", "build4n", "--twin-delete", "2", "--eig")
    assert code == 0
    assert "non-symmetric scheme on 160 points" in out
    assert "8i" in out


def test_scheme_build5(capsys):
    code, out, _ = run(capsys, "scheme", "build5", "--twin-delete", "2", "--f", "2")
    assert code == 0
    assert "5-class symmetric scheme on 288 points" in out
    assert "(1, 9, 6, 72, 72, 128)" in out


def test_scheme_build6(capsys):
    code, out, _ = run(capsys, "scheme", "build6", "--twin", "2", "--f", "2")
    assert code == 0
    assert "6-class symmetric scheme on 224 points" in out


def test_scheme_hamming_and_fusion(capsys):
    code, out, _ = run(capsys, "scheme", "hamming", "--n", "4", "--eig")
    assert code == 0
    assert "4-class symmetric scheme on 16 points" in out
    code, out, _ = run(capsys, "scheme", "fusion", "--n", "6", "--variant", "03")
    assert code == 0
    assert "2-class symmetric scheme on 64 points" in out


def test_scheme_split_requires_source(capsys):
    code, _, err = run(capsys, "scheme", "build4")
    assert code == 2
    assert "--input" in err or "--twin" in err


# --------------------------------------------------------------------- misc


def test_workers_flag_accepted(capsys):
    code, out, _ = run(capsys, "--workers", "4", "enumerate", "table1", "--max-n", "16")
    assert code == 0
    assert "1 parameter sets" in out


def test_bad_subcommand_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_json_payload_shape(capsys, tmp_path):
    f = tmp_path / "h.txt"
    run(capsys, "construct", "sylvester", "--m", "1", "--out", str(f))
    code, out, _ = run(capsys, "check", "--input", str(f), "--rows", "0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "check"
    assert payload["outcome"] == "ok"
    assert payload["data"]["branch"] == "single-value"
    assert len(payload["digest"]) == 64
