"""Report-producing wrappers around every verification.

Each check returns a dict with a stable schema:

    {check, inputs, status: pass|fail|inconclusive, witness, data, wall_time_ms}

Failures always carry a witness. These feed the HTTP service and the CLI.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (
    CherednikAlgebra,
    consistency_sweep,
    euler_check,
    pbw_dimension,
    satake_check_t0,
)
from .dunkl import (
    QuasiInvariantSpec,
    dunkl_commute_check,
    quasi_hilbert_series,
    quasi_invariance_check,
    radial_t_scaling_note,
)
from .groups import group_by_name, param_count
from .hecke import (
    BadOrbifoldError,
    CosetOverflow,
    OrbifoldSignature,
    a2_hecke,
    cyclic_hecke,
    hecke_dimension,
    orbifold_presentation,
    signature_verdict,
    specialize_tau_zero,
    sphere_obstruction,
    todd_coxeter,
)
from .kz import (
    LocalModel,
    hecke_root_check,
    monodromy_exact,
    monodromy_numeric,
    tau_from_c_eta,
    tau_roundtrip_exact,
)


class UsageError(ValueError):
    """Bad user input: unknown group key, malformed signature, bad flags."""


def _report(check: str, inputs: dict, started: float, status: str, witness=None, data=None) -> dict:
    return {
        "check": check,
        "inputs": inputs,
        "status": status,
        "witness": witness,
        "data": data or {},
        "wall_time_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def _group(key: str):
    try:
        return group_by_name(key)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def _parse_fraction(value) -> Fraction:
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational value {value!r}") from exc


def check_dunkl(group: str = "S3", deg: int = 6) -> dict:
    started = time.perf_counter()
    inputs = {"group": group, "deg": deg}
    g = _group(group)
    rep = dunkl_commute_check(g, deg)
    status = "pass" if rep["passed"] else "fail"
    return _report(
        f"dunkl:{group}:deg{deg}",
        inputs,
        started,
        status,
        witness=rep["witness"],
        data={
            "pairs": rep["pairs"],
            "monomials": rep["monomials"],
            "commutators_checked": rep["checked"],
            "parameter_count": param_count(g),
        },
    )


def check_pbw(group: str = "Z2", deg: int = 3) -> dict:
    started = time.perf_counter()
    inputs = {"group": group, "deg": deg}
    g = _group(group)
    rep = pbw_dimension(g, deg)
    status = "pass" if rep["passed"] else "fail"
    witness = None if rep["passed"] else {"dimension": rep["dimension"], "expected": rep["expected"]}
    return _report(
        f"pbw:{group}:deg{deg}",
        inputs,
        started,
        status,
        witness=witness,
        data={"dimension": rep["dimension"], "expected": rep["expected"], "method": rep["method"]},
    )


def check_euler(group: str = "Z2") -> dict:
    started = time.perf_counter()
    inputs = {"group": group}
    g = _group(group)
    rep = euler_check(CherednikAlgebra.formal(g))
    return _report(
        f"euler:{group}",
        inputs,
        started,
        "pass" if rep["passed"] else "fail",
        witness=rep["witness"],
        data={"euler_element": rep["euler"]},
    )


def check_satake(group: str = "Z2", deg: int = 4) -> dict:
    started = time.perf_counter()
    inputs = {"group": group, "deg": deg}
    g = _group(group)
    rep = satake_check_t0(g, deg)
    return _report(
        f"satake:{group}:deg{deg}",
        inputs,
        started,
        "pass" if rep["passed"] else "fail",
        witness=rep["witness"],
        data={
            "center_dimension": rep.get("center_dimension"),
            "image_rank": rep.get("image_rank"),
            "spherical_dimension": rep.get("spherical_dimension"),
        },
    )


def check_consistency(group: str = "Z2", pairs: int = 100, max_len: int = 4, deg: int = 5, seed: int = 0) -> dict:
    started = time.perf_counter()
    inputs = {"group": group, "pairs": pairs, "max_len": max_len, "deg": deg, "seed": seed}
    g = _group(group)
    rep = consistency_sweep(g, pairs, max_len, deg, seed)
    return _report(
        f"consistency:{group}:{pairs}x{max_len}",
        inputs,
        started,
        "pass" if rep["passed"] else "fail",
        witness=rep.get("witness"),
        data={"pairs_checked": rep["pairs_checked"]},
    )


def check_quasi(m: int = 1, deg: int = 12) -> dict:
    started = time.perf_counter()
    inputs = {"m": m, "deg": deg}
    if m < 0:
        raise UsageError("multiplicity m must be nonnegative")
    spec = QuasiInvariantSpec(m, deg)
    inv = quasi_invariance_check(spec)
    hil = quasi_hilbert_series(spec)
    passed = inv["passed"] and hil["palindromic"] and hil["dimension_match"]
    witness = inv["witness"] if not inv["passed"] else (
        None if passed else {"hilbert": hil}
    )
    return _report(
        f"quasi:m{m}:deg{deg}",
        inputs,
        started,
        "pass" if passed else "fail",
        witness=witness,
        data={
            "generic_c_failure": inv.get("generic_c_failure"),
            "hilbert_numerator": hil["numerator"],
            "hilbert_denominator": hil["denominator"],
            "palindromic": hil["palindromic"],
            # observed, not asserted: the closure scales to c = m*t for formal t
            "formal_t_scaling_observed": radial_t_scaling_note(m),
        },
    )


def check_kz_monodromy(
    n: int = 2,
    c: Sequence | None = None,
    eta=0,
    steps: int = 4096,
    tol: float = 1e-8,
) -> dict:
    started = time.perf_counter()
    if n < 2:
        raise UsageError("local model order n must be >= 2")
    c_values = [Fraction(1, 10)] * (n - 1) if c is None else [_parse_fraction(v) for v in c]
    if len(c_values) == 1 and n > 2:
        c_values = c_values * (n - 1)
    if len(c_values) != n - 1:
        raise UsageError(f"need {n - 1} c-values for n={n}, got {len(c_values)}")
    eta_value = _parse_fraction(eta)
    inputs = {
        "n": n,
        "c": [str(v) for v in c_values],
        "eta": str(eta_value),
        "steps": steps,
        "tol": tol,
    }
    model = LocalModel(n)
    numeric = monodromy_numeric(model, c_values, eta_value, steps)
    exact = monodromy_exact(model, c_values, eta_value)
    ok = numeric.max_deviation <= tol
    data = {
        "n": n,
        "c": [str(v) for v in c_values],
        "eta": str(eta_value),
        "method": numeric.method,
        "eigenvalues": [[z.real, z.imag] for z in numeric.eigenvalues],
        "zeta_exact": exact.exponents,
        "max_deviation": numeric.max_deviation,
        "resonant": exact.resonant,
        "steps": steps,
    }
    witness = None if ok else {"max_deviation": numeric.max_deviation, "tol": tol}
    return _report(
        f"kz-monodromy:n{n}",
        inputs,
        started,
        "pass" if ok else "fail",
        witness=witness,
        data=data,
    )


def check_kz_roots(n: int = 2) -> dict:
    started = time.perf_counter()
    if n < 2:
        raise UsageError("local model order n must be >= 2")
    rep = hecke_root_check(LocalModel(n))
    return _report(
        f"kz-roots:n{n}",
        {"n": n},
        started,
        "pass" if rep["passed"] else "fail",
        witness=rep["witness"],
        data={"n": n, "mode": "symbolic-exponent"},
    )


def check_kz_tau(n: int = 2, c: Sequence | None = None, eta=0) -> dict:
    started = time.perf_counter()
    if n < 2:
        raise UsageError("local model order n must be >= 2")
    c_values = (
        [Fraction(k + 1, 2 * n + 3) for k in range(n - 1)]
        if c is None
        else [_parse_fraction(v) for v in c]
    )
    if len(c_values) != n - 1:
        raise UsageError(f"need {n - 1} c-values for n={n}, got {len(c_values)}")
    eta_value = _parse_fraction(eta)
    inputs = {"n": n, "c": [str(v) for v in c_values], "eta": str(eta_value)}
    model = LocalModel(n)
    tau = tau_from_c_eta(model)
    ok = tau_roundtrip_exact(model, c_values, eta_value)
    tau_numeric = tau.numeric_complex(c_values, eta_value)
    return _report(
        f"kz-tau:n{n}",
        inputs,
        started,
        "pass" if ok else "fail",
        witness=None if ok else {"roundtrip": "failed"},
        data={
            "n": n,
            "tau": [[z.real, z.imag] for z in tau_numeric],
            "tau_symbolic": [f"2*pi*i*({u})" for u in tau.u],
            "roundtrip_exact": ok,
        },
    )


def _parse_signature(text: str) -> OrbifoldSignature:
    try:
        return OrbifoldSignature.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def check_hecke_group(signature: str = "g=0;2,3,3", max_cosets: int = 10_000, expect_overflow: bool = False) -> dict:
    started = time.perf_counter()
    inputs = {"signature": signature, "max_cosets": max_cosets}
    sig = _parse_signature(signature)
    pres = orbifold_presentation(sig)
    try:
        rep = todd_coxeter(pres, max_cosets)
    except CosetOverflow:
        status = "pass" if expect_overflow else "inconclusive"
        return _report(
            f"hecke-group:{signature}",
            inputs,
            started,
            status,
            witness=None if expect_overflow else {"overflow": max_cosets},
            data={
                "signature": signature,
                "presentation": pres.describe(),
                "group_order": "overflow",
                "chi_orb": str(sig.chi_orb()),
            },
        )
    trivial = rep.relators_trivial(pres.relators)
    status = "fail" if (expect_overflow or not trivial) else "pass"
    return _report(
        f"hecke-group:{signature}",
        inputs,
        started,
        status,
        witness=None if status == "pass" else {"relators_trivial": trivial},
        data={
            "signature": signature,
            "presentation": pres.describe(),
            "group_order": rep.degree,
            "chi_orb": str(sig.chi_orb()),
            "relators_trivial": trivial,
        },
    )


def check_hecke_obstruction(signature: str = "g=0;2,3,3") -> dict:
    started = time.perf_counter()
    inputs = {"signature": signature}
    sig = _parse_signature(signature)
    try:
        rep = sphere_obstruction(sig)
    except (ValueError, BadOrbifoldError) as exc:
        raise UsageError(str(exc)) from exc
    passed = rep["nonzero"] and rep["epsilon_consistent"]
    return _report(
        f"hecke-obstruction:{signature}",
        inputs,
        started,
        "pass" if passed else "fail",
        witness=None if passed else rep,
        data={
            "signature": rep["signature"],
            "group_order": rep["group_order"],
            "obstruction_form": {
                "labels": rep["labels"],
                "coefficients": rep["coefficients"],
            },
            "epsilon": rep["epsilon"],
            "verdict": rep["verdict"],
        },
    )


def check_hecke_verdict(signature: str = "g=0;2,3,5", max_cosets: int = 10_000) -> dict:
    started = time.perf_counter()
    inputs = {"signature": signature, "max_cosets": max_cosets}
    sig = _parse_signature(signature)
    rep = signature_verdict(sig, max_cosets)
    data = {
        "signature": rep["signature"],
        "chi_orb": rep["chi_orb"],
        "curvature": rep["curvature"],
        "group_order": rep["group_order"],
        "verdict": rep["verdict"],
    }
    data["obstruction_form"] = None
    if rep["curvature"] == "spherical" and rep["verdict"] == "expected-not-flat":
        try:
            obs = sphere_obstruction(sig)
            data["obstruction_form"] = {
                "labels": obs["labels"],
                "coefficients": obs["coefficients"],
            }
            cross_ok = obs["nonzero"]
        except BadOrbifoldError as exc:
            data["obstruction_form"] = f"not applicable: {exc}"
            cross_ok = True
    else:
        cross_ok = True
    return _report(
        f"hecke-verdict:{signature}",
        inputs,
        started,
        "pass" if cross_ok else "fail",
        witness=None if cross_ok else {"obstruction_vanished": True},
        data=data,
    )


def check_hecke_dim(kind: str = "cyclic", n: int = 4, trunc: int = 2) -> dict:
    started = time.perf_counter()
    inputs = {"kind": kind, "n": n, "trunc": trunc}
    if kind == "cyclic":
        if n < 2:
            raise UsageError("cyclic case needs n >= 2")
        pres = cyclic_hecke(n, trunc)
        normal_form_length = n - 1
        expected = n
        check_id = f"hecke-dim:cyclic{n}"
    elif kind == "a2":
        pres = a2_hecke(trunc)
        normal_form_length = 3
        expected = 6
        check_id = "hecke-dim:a2"
    else:
        raise UsageError(f"unknown presentation kind {kind!r} (catalog: cyclic, a2)")
    rep = hecke_dimension(pres, normal_form_length)
    spec0 = specialize_tau_zero(pres)
    if not rep["stable"]:
        status = "inconclusive"
    elif rep["passed"] and rep["rank"] == expected and spec0["passed"]:
        status = "pass"
    else:
        status = "fail"
    return _report(
        check_id,
        inputs,
        started,
        status,
        witness=None if status == "pass" else {"rank": rep["rank"], "expected": expected, "free": rep["free"]},
        data={
            "rank": rep["rank"],
            "expected": expected,
            "free": rep["free"],
            "stable": rep["stable"],
            "tau_zero_power_relations": spec0["passed"],
            "caps": rep["caps"],
        },
    )


# ---------------------------------------------------------------------------
# the full suite
# ---------------------------------------------------------------------------


def suite_plan(quick: bool = False, seed: int = 0, steps: int = 4096, tol: float = 1e-8) -> list[tuple[str, Callable[[], dict]]]:
    """Every verification in the primary acceptance suite.

    quick reduces only the randomized sampling counts; every check still runs.
    """
    monodromy_draws = 5 if quick else 20
    consistency_pairs = {"Z2": 40, "Z3": 30, "Z4": 15, "B2": 15} if quick else {
        "Z2": 150,
        "Z3": 150,
        "Z4": 100,
        "B2": 100,
    }
    plan: list[tuple[str, Callable[[], dict]]] = []
    for key in ("S3", "Z4", "I2(4)", "B2"):
        plan.append((f"dunkl:{key}", lambda k=key: check_dunkl(k, 6)))
    for key in ("Z2", "Z3", "S3", "B2"):
        plan.append((f"pbw:{key}", lambda k=key: check_pbw(k, 3)))
    for key, pairs in consistency_pairs.items():
        plan.append(
            (f"consistency:{key}", lambda k=key, p=pairs: check_consistency(k, p, 4, 5, seed))
        )
    for key in ("Z2", "Z3", "Z4", "S3", "B2", "I2(4)"):
        plan.append((f"euler:{key}", lambda k=key: check_euler(k)))
    for key in ("Z2", "Z3"):
        plan.append((f"satake:{key}", lambda k=key: check_satake(k, 4)))
    for n in (2, 3, 4, 6):
        plan.append((f"kz-roots:n{n}", lambda m=n: check_kz_roots(m)))
        plan.append(
            (
                f"kz-monodromy:n{n}",
                lambda m=n: _monodromy_draws(m, monodromy_draws, seed, steps, tol),
            )
        )
    for n in range(2, 9):
        plan.append((f"kz-tau:n{n}", lambda m=n: check_kz_tau(m)))
    for sig in ("g=0;2,3,3", "g=0;2,3,4", "g=0;2,3,5", "g=0;2,2,5"):
        plan.append((f"hecke-group:{sig}", lambda s=sig: check_hecke_group(s)))
    plan.append(
        (
            "hecke-group-overflow:g=0;2,3,7",
            lambda: check_hecke_group("g=0;2,3,7", 10_000, expect_overflow=True),
        )
    )
    for sig in ("g=0;2,3,3", "g=0;2,3,5", "g=0;2,2,2"):
        plan.append((f"hecke-obstruction:{sig}", lambda s=sig: check_hecke_obstruction(s)))
    for sig in ("g=0;2,3,5", "g=0;2,3,7", "g=0;2,2,2,2"):
        plan.append((f"hecke-verdict:{sig}", lambda s=sig: check_hecke_verdict(s)))
    for n in (2, 3, 4):
        plan.append((f"hecke-dim:cyclic{n}", lambda m=n: check_hecke_dim("cyclic", m)))
    plan.append(("hecke-dim:a2", lambda: check_hecke_dim("a2")))
    for m in (0, 1, 2, 3):
        plan.append((f"quasi:m{m}", lambda mm=m: check_quasi(mm, 12)))
    return plan


def _monodromy_draws(n: int, draws: int, seed: int, steps: int, tol: float) -> dict:
    """Random parameter draws in the non-resonance window, one combined report."""
    import random

    started = time.perf_counter()
    rng = random.Random(seed * 1000 + n)
    model = LocalModel(n)
    worst = 0.0
    runs = 0
    witness = None
    while runs < draws:
        c_values = [Fraction(rng.randint(-12, 12), 100) for _ in range(n - 1)]
        eta = Fraction(rng.randint(-20, 20), 100)
        exact = monodromy_exact(model, c_values, eta)
        if exact.resonant:
            continue  # redraw; the window keeps parameters small but not disjoint
        numeric = monodromy_numeric(model, c_values, eta, steps)
        worst = max(worst, numeric.max_deviation)
        runs += 1
        if numeric.max_deviation > tol:
            witness = {
                "c": [str(v) for v in c_values],
                "eta": str(eta),
                "max_deviation": numeric.max_deviation,
            }
            break
    return _report(
        f"kz-monodromy:n{n}",
        {"n": n, "draws": draws, "steps": steps, "tol": tol, "seed": seed},
        started,
        "pass" if witness is None else "fail",
        witness=witness,
        data={"n": n, "runs": runs, "max_deviation": worst, "steps": steps},
    )


def run_all(quick: bool = False, seed: int = 0, steps: int = 4096, tol: float = 1e-8, workers: int = 4) -> list[dict]:
    """Dispatch independent checks to a worker pool; order by completion."""
    plan = suite_plan(quick=quick, seed=seed, steps=steps, tol=tol)
    reports: list[dict] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(fn): check_id for check_id, fn in plan}
        for fut in as_completed(futures):
            reports.append(fut.result())
    return reports
