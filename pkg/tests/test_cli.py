import io

import pytest

from fanobounds.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_div_ln2():
    assert run("div", "--f", "kl", "--p", "1,0", "--q", "0.5,0.5") == (0, "0.693147\n")


def test_div_equal_inputs():
    assert run("div", "--f", "chi2", "--p", "0.3,0.7", "--q", "0.3,0.7") == (0, "0\n")


def test_div_infinite_token():
    assert run("div", "--p", "0.5,0.5", "--q", "1,0") == (0, "inf\n")


def test_div_precise():
    code, out = run("div", "--p", "1,0", "--q", "0.5,0.5", "--precise")
    assert out.strip() == repr(0.6931471805599453)


def test_div_mismatched_lengths(capsys):
    code, _ = run("div", "--p", "1,0", "--q", "0.2,0.3,0.5")
    assert code == 2
    assert "atoms" in capsys.readouterr().err


def test_bounds_refined_row():
    code, out = run("bounds", "--q-bar", "0.5", "--d-bar", "0", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,value,vacuous"
    assert "kl_refined,0.584963,false" in lines


def test_bounds_infinite_all_vacuous():
    code, out = run("bounds", "--q-bar", "0.5", "--d-bar", "inf", "--format", "csv")
    rows = out.splitlines()[1:]
    assert code == 0 and rows and all(r.endswith(",1,true") for r in rows)


def test_bounds_precondition(capsys):
    code, _ = run("bounds", "--q-bar", "1", "--d-bar", "0")
    assert code == 3
    assert "0 < (1/N) sum_i Q_i(A_i) < 1" in capsys.readouterr().err


def test_bounds_family_file(tmp_path):
    path = tmp_path / "fam.csv"
    path.write_text("# weight,p,q,div\n0.5,0.6,0.25,0.2\n0.5,0.4,0.25,inf\n")
    code, out = run("bounds", "--family-file", str(path), "--format", "csv")
    assert code == 0
    assert all(r.endswith(",1,true") for r in out.splitlines()[1:])
    path.write_text("0.5,0.6,0.25,0.2\n0.5,0.4,0.25,0.1\n")
    code, out = run("bounds", "--family-file", str(path), "--f", "hellinger", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("lecam,")


def test_bounds_family_file_bad_record(tmp_path):
    path = tmp_path / "fam.csv"
    path.write_text("0.5,0.6,0.25\n")
    assert run("bounds", "--family-file", str(path))[0] == 2


def test_birge_table():
    code, out = run("birge", "2", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "N,c_N,d_N,massart"
    n, c, d, m = lines[1].split(",")
    assert abs(float(c) - 0.7587) <= 5e-4 and abs(float(d) - 0.7428) <= 5e-4


def test_birge_bad_n():
    assert run("birge", "1")[0] == 2


def test_apps_posterior():
    code, out = run("apps", "posterior", "--d", "2", "--format", "csv")
    c_d = float(out.splitlines()[1].split(",")[1])
    assert code == 0 and c_d <= 0.37


def test_apps_regret():
    code, out = run("apps", "regret", "--N", "16", "--s", "4", "--T", "1600")
    assert code == 0 and "bound=1.04069" in out and "regime=large_T" in out


def test_apps_cramer():
    code, out = run("apps", "cramer", "--theta", "0.5", "--x", "0.75", "--n", "1000")
    assert code == 0 and "empirical_rate=" in out and "limit_rate=-0.130812" in out


def test_apps_dd():
    assert run("apps", "dd", "--psi", "0.1", "--n", "10", "--c", "2")[1].strip().endswith("bound=0.0338338")
    assert run("apps", "dd", "--epsilon", "1", "--sigma", "2", "--n", "1", "--c", "2")[0] == 0
    assert run("apps", "dd", "--psi", "0.1", "--n", "10", "--c", "1")[0] == 2


def test_apps_validation():
    assert run("apps", "cramer", "--theta", "0.5", "--x", "0.2", "--n", "10")[0] == 2
    assert run("apps", "posterior", "--d", "0")[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["div", "--p", "1"])
    assert exc.value.code == 2


def test_verify_deterministic():
    a = run("verify", "--seed", "5")
    b = run("verify", "--seed", "5")
    assert a == b and a[0] == 0
