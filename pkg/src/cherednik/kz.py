"""Rank-1 cyclic local monodromy model.

For a cyclic stabilizer of order n acting on a punctured disk, the flat
connection has residue eigenvalues

    beta_j = 2 sum_m c_m (1 - w^(-jm)) / (1 - w^(-m)) + eta,   w = exp(2 pi i / n)

on the character lines of the regular representation. The loop monodromy
is (deck action) o (continuation over a 1/n turn); its eigenvalue on the
j-th character line is exp(2 pi i (j - beta_j) / n). The deformation
parameters tau relate by tau_j = -(2 pi i / n) * (the same bracket at j),
so the monodromy eigenvalues coincide with the local polynomial roots
exp(2 pi i j / n) * exp(tau_j). All exponents are carried exactly as
coefficients of the formal unit 2*pi*i; floats appear only on embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import cmath

import numpy as np

from .cyclotomic import Cyc, cyc, zeta
from .linalg import solve
from .polys import ParamRing, ParamScalar


class LocalModel:
    """Order-n local data: parameters c_1..c_{n-1} and eta, all formal."""

    def __init__(self, n: int, t: Fraction | int = 1):
        if n < 2:
            raise ValueError("local model needs order n >= 2")
        if t != 1:
            raise ValueError("the monodromy model is normalized to t = 1")
        self.n = n
        self.t = Fraction(t)
        self.ring = ParamRing(tuple(f"c{m}" for m in range(1, n)) + ("eta",))
        self.c = tuple(self.ring.var(f"c{m}") for m in range(1, n))
        self.eta = self.ring.var("eta")

    # (1 - w^(-jm)) / (1 - w^(-m)) as the geometric sum 1 + w^-m + ... + w^-m(j-1)
    def _ratio(self, j: int, m: int) -> Cyc:
        total = cyc(0)
        for k in range(j):
            total = total + zeta(self.n, (-m * k) % self.n)
        return total

    def flat_exponent(self, j: int) -> ParamScalar:
        """beta_j for the character index j in 0..n-1 (beta_0 = eta)."""
        j %= self.n
        total = self.eta
        for m in range(1, self.n):
            ratio = self._ratio(j, m)
            if ratio:
                total = total + self.c[m - 1] * self.ring.const(cyc(2) * ratio)
        return total

    def zeta_exponent(self, j: int) -> ParamScalar:
        """Coefficient of 2*pi*i in the character eigenvalue: (j - beta_j)/n."""
        j %= self.n
        return (self.ring.const(j) - self.flat_exponent(j)) / self.ring.const(self.n)

    def substitution(self, c_values: Sequence, eta_value) -> dict[str, Cyc]:
        if len(c_values) != self.n - 1:
            raise ValueError(f"need {self.n - 1} c-values for n = {self.n}")
        values = {f"c{m}": _as_cyc(c_values[m - 1]) for m in range(1, self.n)}
        values["eta"] = _as_cyc(eta_value)
        return values

    def zeta_value(self, j: int, c_values: Sequence, eta_value) -> complex:
        v = self.zeta_exponent(j).substitute(self.substitution(c_values, eta_value))
        return cmath.exp(2j * cmath.pi * v.embed())


def _as_cyc(value) -> Cyc:
    if isinstance(value, Cyc):
        return value
    return cyc(Fraction(value))


def zeta_character(model: LocalModel, j: int, c_values: Sequence, eta_value) -> complex:
    return model.zeta_value(j, c_values, eta_value)


# ---------------------------------------------------------------------------
# the tau parameters
# ---------------------------------------------------------------------------


@dataclass
class TauParameters:
    """tau_j = 2*pi*i * u_j for j = 1..n; u_j stored exactly (linear in c, eta)."""

    model: LocalModel
    u: tuple[ParamScalar, ...]

    def numeric(self, c_values: Sequence, eta_value) -> list[Cyc]:
        sub = self.model.substitution(c_values, eta_value)
        return [uj.substitute(sub) for uj in self.u]

    def numeric_complex(self, c_values: Sequence, eta_value) -> list[complex]:
        return [2j * cmath.pi * v.embed() for v in self.numeric(c_values, eta_value)]


def tau_from_c_eta(model: LocalModel) -> TauParameters:
    """The linear map (c, eta) -> tau, built independently of flat_exponent."""
    n = model.n
    rows = []
    for j in range(1, n + 1):
        total = model.eta
        for m in range(1, n):
            # geometric sum for (1 - w^(-jm))/(1 - w^(-m))
            acc = cyc(0)
            for k in range(j):
                acc = acc + zeta(n, (-m * k) % n)
            if acc:
                total = total + model.c[m - 1] * model.ring.const(acc * 2)
        rows.append(-total / model.ring.const(n))
    return TauParameters(model, tuple(rows))


def c_eta_from_tau(model: LocalModel, u_values: Sequence) -> dict[str, Cyc]:
    """Invert the tau map exactly; input is the 2*pi*i coefficient of each tau_j."""
    n = model.n
    rows: list[dict[int, Cyc]] = []
    rhs: list[Cyc] = []
    for j in range(1, n + 1):
        row: dict[int, Cyc] = {}
        for m in range(1, n):
            acc = cyc(0)
            for k in range(j):
                acc = acc + zeta(n, (-m * k) % n)
            coeff = acc * 2
            if coeff:
                row[m - 1] = coeff
        row[n - 1] = cyc(1)  # eta column
        rows.append(row)
        rhs.append(_as_cyc(u_values[j - 1]) * (-n))
    sol = solve(rows, rhs, n)
    if sol is None:
        raise ArithmeticError("tau map failed to invert: inconsistent input")
    out = {f"c{m}": sol.get(m - 1, cyc(0)) for m in range(1, n)}
    out["eta"] = sol.get(n - 1, cyc(0))
    return out


def tau_roundtrip_exact(model: LocalModel, c_values: Sequence, eta_value) -> bool:
    tau = tau_from_c_eta(model)
    u_vals = tau.numeric(c_values, eta_value)
    recovered = c_eta_from_tau(model, u_vals)
    expect = model.substitution(c_values, eta_value)
    return all(recovered[k] == expect[k] for k in expect)


# ---------------------------------------------------------------------------
# monodromy
# ---------------------------------------------------------------------------


@dataclass
class MonodromyResult:
    n: int
    method: str  # "exact-exponent" | "ode-numeric"
    eigenvalues: list[complex]  # indexed by character j
    exponents: list[str]  # exact 2*pi*i coefficients, as text
    resonant: bool
    max_deviation: float = 0.0
    steps: int = 0


def _residue_matrix_exact(model: LocalModel, c_values: Sequence, eta_value) -> list[list[Cyc]]:
    """A = sum_m a_m (I - P^m) + eta I on the regular representation,
    a_m = 2 c_m / (1 - lambda^m) with lambda the conormal eigenvalue w^-1."""
    n = model.n
    cs = [_as_cyc(v) for v in c_values]
    eta = _as_cyc(eta_value)
    A = [[cyc(0) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        A[i][i] = A[i][i] + eta
    for m in range(1, n):
        lam_m = zeta(n, (-m) % n)
        a_m = (cs[m - 1] * 2) / (cyc(1) - lam_m)
        if not a_m:
            continue
        for i in range(n):
            A[i][i] = A[i][i] + a_m
            A[i][(i - m) % n] = A[i][(i - m) % n] - a_m  # (P^m)_{i, i-m} = 1
    return A


def monodromy_exact(model: LocalModel, c_values: Sequence, eta_value) -> MonodromyResult:
    """Deck action composed with the 1/n-turn continuation, diagonalized
    exactly on the character basis."""
    n = model.n
    A = _residue_matrix_exact(model, c_values, eta_value)
    sub = model.substitution(c_values, eta_value)
    betas = [model.flat_exponent(j).substitute(sub) for j in range(n)]
    # exact eigen-verification: A w_j = beta_j w_j and P^-1 w_j = w^j w_j,
    # with w_j = (w^(j k))_k
    for j in range(n):
        w_vec = [zeta(n, (j * k) % n) for k in range(n)]
        for i in range(n):
            lhs = sum((A[i][k] * w_vec[k] for k in range(n)), cyc(0))
            if lhs != betas[j] * w_vec[i]:
                raise ArithmeticError("residue matrix failed exact diagonalization")
    exponents = [(cyc(j) - betas[j]) / cyc(n) for j in range(n)]
    resonant = _resonant(exponents)
    eigenvalues = [cmath.exp(2j * cmath.pi * v.embed()) for v in exponents]
    return MonodromyResult(
        n=n,
        method="exact-exponent",
        eigenvalues=eigenvalues,
        exponents=[str(v) for v in exponents],
        resonant=resonant,
    )


def _resonant(exponents: list[Cyc]) -> bool:
    n = len(exponents)
    for j in range(n):
        for k in range(j + 1, n):
            diff = exponents[j] - exponents[k]
            if diff.is_integer():
                return True
    return False


def monodromy_numeric(model: LocalModel, c_values: Sequence, eta_value, steps: int = 4096) -> MonodromyResult:
    """Fourth-order integration of the flat-section system f' = -(A/z) f
    along z = exp(i theta / n), theta in [0, 2 pi], composed with the deck
    permutation; compares eigenvalues against the exact characters."""
    if steps < 4:
        raise ValueError("need at least 4 integration steps")
    n = model.n
    A_exact = _residue_matrix_exact(model, c_values, eta_value)
    A = np.array([[A_exact[i][k].embed() for k in range(n)] for i in range(n)], dtype=complex)
    # d f / d theta = f'(z) dz/dtheta = -(A/z) * (i/n) z f = -(i/n) A f
    M = -(1j / n) * A
    h = 2 * cmath.pi / steps
    U = np.eye(n, dtype=complex)
    for _ in range(steps):
        k1 = M @ U
        k2 = M @ (U + 0.5 * h * k1)
        k3 = M @ (U + 0.5 * h * k2)
        k4 = M @ (U + h * k3)
        U = U + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    deck = np.zeros((n, n), dtype=complex)
    for i in range(n):
        deck[i][(i + 1) % n] = 1.0  # transpose of the shift: P^-1
    T = deck @ U
    numeric = list(np.linalg.eigvals(T))
    exact = monodromy_exact(model, c_values, eta_value)
    ordered, max_dev = _match_eigenvalues(exact.eigenvalues, numeric)
    return MonodromyResult(
        n=n,
        method="ode-numeric",
        eigenvalues=ordered,
        exponents=exact.exponents,
        resonant=exact.resonant,
        max_deviation=max_dev,
        steps=steps,
    )


def _match_eigenvalues(exact: list[complex], numeric: list[complex]) -> tuple[list[complex], float]:
    """Greedy nearest matching of the numeric multiset to the exact one."""
    remaining = list(numeric)
    ordered = []
    max_dev = 0.0
    for target in exact:
        best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - target))
        val = remaining.pop(best)
        ordered.append(val)
        max_dev = max(max_dev, abs(val - target))
    return ordered, max_dev


# ---------------------------------------------------------------------------
# roots of the local polynomial relation vs. monodromy characters
# ---------------------------------------------------------------------------


def hecke_root_check(model: LocalModel) -> dict:
    """The multiset {character j} equals the multiset of relation roots
    {exp(2 pi i j / n) exp(tau_j)}, exactly in exponent form (j mod n)."""
    n = model.n
    tau = tau_from_c_eta(model)
    mismatches = []
    for j in range(1, n + 1):
        root_exponent = model.ring.const(Fraction(j, n)) + tau.u[j - 1]
        char_exponent = model.zeta_exponent(j % n)
        diff = char_exponent - root_exponent
        ok = False
        if diff.is_polynomial() and diff.num.total_degree() <= 0:
            const = diff.num.constant_coeff()
            ok = const is None or const.is_integer()
        if not ok:
            mismatches.append({"j": j, "difference": str(diff)})
    return {
        "passed": not mismatches,
        "n": n,
        "witness": mismatches or None,
    }
