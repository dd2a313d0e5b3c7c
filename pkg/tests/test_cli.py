import json

from cherednik.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    reports = [json.loads(line) for line in captured.out.splitlines() if line.strip()]
    return code, reports, captured.err


def test_verify_dunkl(capsys):
    code, reports, err = run_cli(capsys, "verify", "dunkl", "--group", "S3", "--deg", "3")
    assert code == EXIT_PASS
    assert len(reports) == 1
    assert reports[0]["status"] == "pass"
    assert "PASS" in err


def test_json_flag_suppresses_summary(capsys):
    code, reports, err = run_cli(capsys, "verify", "euler", "--group", "Z2", "--json")
    assert code == EXIT_PASS
    assert reports[0]["check"] == "euler:Z2"
    assert err == ""


def test_unknown_group_usage_exit(capsys):
    code, reports, err = run_cli(capsys, "verify", "dunkl", "--group", "H4")
    assert code == EXIT_USAGE
    assert not reports


def test_unknown_subcommand_usage_exit(capsys):
    code, _, _ = run_cli(capsys, "verify", "everything")
    assert code == EXIT_USAGE


def test_kz_monodromy(capsys):
    code, reports, _ = run_cli(
        capsys, "kz", "monodromy", "--n", "2", "--c", "0.1", "--eta", "0", "--steps", "512", "--json"
    )
    assert code == EXIT_PASS
    data = reports[0]["data"]
    assert data["max_deviation"] < 1e-8
    assert len(data["eigenvalues"]) == 2


def test_kz_tau_multiple_c(capsys):
    code, reports, _ = run_cli(capsys, "kz", "tau", "--n", "3", "--c", "1/7,2/7", "--eta", "1/9", "--json")
    assert code == EXIT_PASS
    assert reports[0]["data"]["roundtrip_exact"] is True


def test_hecke_obstruction_coefficients(capsys):
    code, reports, _ = run_cli(capsys, "hecke", "obstruction", "--signature", "g=0;2,3,3", "--json")
    assert code == EXIT_PASS
    assert reports[0]["data"]["obstruction_form"]["coefficients"] == [6, 6, 4, 4, 4, 4, 4, 4]


def test_hecke_group_overflow_nonzero_exit(capsys):
    code, reports, _ = run_cli(
        capsys, "hecke", "group", "--signature", "g=0;2,3,7", "--max-cosets", "10000", "--json"
    )
    assert code == EXIT_FAIL  # inconclusive: no verdict at the bound
    assert reports[0]["status"] == "inconclusive"


def test_hecke_dim_cyclic(capsys):
    code, reports, _ = run_cli(capsys, "hecke", "dim", "--kind", "cyclic", "--n", "4", "--json")
    assert code == EXIT_PASS
    assert reports[0]["data"]["rank"] == 4


def test_remaining_verify_subcommands(capsys):
    code, reports, _ = run_cli(capsys, "verify", "pbw", "--group", "Z3", "--deg", "2", "--json")
    assert code == EXIT_PASS and reports[0]["data"]["dimension"] == 3 * 6
    code, reports, _ = run_cli(capsys, "verify", "satake", "--group", "Z2", "--deg", "2", "--json")
    assert code == EXIT_PASS and reports[0]["data"]["center_dimension"] == 4
    code, reports, _ = run_cli(
        capsys, "verify", "consistency", "--group", "Z2", "--pairs", "15", "--seed", "4", "--json"
    )
    assert code == EXIT_PASS and reports[0]["data"]["pairs_checked"] == 15
    code, reports, _ = run_cli(capsys, "verify", "quasi", "--m", "2", "--deg", "10", "--json")
    assert code == EXIT_PASS and reports[0]["data"]["palindromic"] is True
    code, reports, _ = run_cli(capsys, "kz", "roots", "--n", "6", "--json")
    assert code == EXIT_PASS and reports[0]["check"] == "kz-roots:n6"


def test_verify_all_quick_jsonlines(capsys):
    code, reports, _ = run_cli(capsys, "verify", "all", "--quick", "--json")
    assert code == EXIT_PASS
    assert len(reports) > 40
    assert all(r["status"] == "pass" for r in reports)
    # one JSON object per line, stable check ids
    ids = [r["check"] for r in reports]
    assert len(ids) == len(set(ids))


def test_malformed_signature_usage(capsys):
    code, reports, _ = run_cli(capsys, "hecke", "verdict", "--signature", "nonsense")
    assert code == EXIT_USAGE


def test_internal_inconsistency_exit_code(capsys, monkeypatch):
    from cherednik import checks
    from cherednik.cli import EXIT_INTERNAL
    from cherednik.dunkl import InconsistentReflectionData

    def boom(group, deg):
        raise InconsistentReflectionData("synthetic corruption")

    monkeypatch.setattr(checks, "check_dunkl", boom)
    code, reports, err = run_cli(capsys, "verify", "dunkl", "--group", "S3")
    assert code == EXIT_INTERNAL
    assert not reports
    assert "internal inconsistency" in err
