import pytest

from cherednik.checks import (
    UsageError,
    check_dunkl,
    check_hecke_dim,
    check_hecke_group,
    check_kz_monodromy,
    check_kz_tau,
    check_quasi,
    run_all,
    suite_plan,
)


def test_report_schema():
    rep = check_dunkl("Z2", 3)
    assert set(rep) == {"check", "inputs", "status", "witness", "data", "wall_time_ms"}
    assert rep["status"] == "pass" and rep["witness"] is None
    assert rep["wall_time_ms"] >= 0


def test_unknown_group_usage_error():
    with pytest.raises(UsageError):
        check_dunkl("F4", 3)


def test_monodromy_wrong_c_count():
    with pytest.raises(UsageError):
        check_kz_monodromy(4, ["0.1", "0.2"], 0)


def test_monodromy_single_c_broadcast():
    rep = check_kz_monodromy(3, ["0.05"], 0, steps=512)
    assert rep["status"] == "pass"
    assert rep["inputs"]["c"] == ["1/20", "1/20"]


def test_monodromy_bad_rational():
    with pytest.raises(UsageError):
        check_kz_monodromy(2, ["not-a-number"], 0)


def test_tau_default_values():
    rep = check_kz_tau(4)
    assert rep["status"] == "pass"
    assert rep["data"]["roundtrip_exact"] is True
    assert len(rep["data"]["tau"]) == 4


def test_quasi_negative_m():
    with pytest.raises(UsageError):
        check_quasi(-1, 10)


def test_quasi_data_fields():
    rep = check_quasi(2, 12)
    assert rep["status"] == "pass"
    assert rep["data"]["hilbert_numerator"] == [1, 0, 0, 0, 0, 1]
    assert rep["data"]["formal_t_scaling_observed"] is True


def test_hecke_dim_unknown_kind():
    with pytest.raises(UsageError):
        check_hecke_dim("b3", 3)


def test_hecke_group_expected_overflow():
    rep = check_hecke_group("g=0;2,3,7", 5000, expect_overflow=True)
    assert rep["status"] == "pass"
    rep = check_hecke_group("g=0;2,3,3", 5000, expect_overflow=True)
    assert rep["status"] == "fail"  # closed although overflow was expected


def test_suite_plan_covers_every_check_family():
    ids = [check_id for check_id, _ in suite_plan(quick=True)]
    for prefix in (
        "dunkl:",
        "pbw:",
        "consistency:",
        "euler:",
        "satake:",
        "kz-roots:",
        "kz-monodromy:",
        "kz-tau:",
        "hecke-group:",
        "hecke-obstruction:",
        "hecke-verdict:",
        "hecke-dim:",
        "quasi:",
    ):
        assert any(i.startswith(prefix) for i in ids), prefix
    assert "hecke-group-overflow:g=0;2,3,7" in ids


def test_run_all_quick_deterministic_statuses():
    first = {r["check"]: r["status"] for r in run_all(quick=True, seed=3, workers=2)}
    second = {r["check"]: r["status"] for r in run_all(quick=True, seed=3, workers=2)}
    assert first == second
    assert set(first.values()) == {"pass"}
