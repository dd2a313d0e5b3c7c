"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[z]/(Phi_n(z)) with Fraction coefficients, always at the smallest
conductor that contains the value (rationals live at conductor 1).
Keeping the conductor minimal makes equality and hashing canonical and
keeps the common all-rational computations on the fast path.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rat = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # dense univariate division over Q; den is assumed monic or at least with
    # invertible leading coefficient
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [_ZERO] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    while num and not num[-1]:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    num: list[Fraction] = [_ZERO] * (n + 1)
    num[0] = Fraction(-1)
    num[n] = Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            if rem:
                raise ArithmeticError("cyclotomic polynomial division must be exact")
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row e is z^e expressed in the power basis of Q(zeta_n)."""
    phi = euler_phi(n)
    size = max(n, 2 * phi - 1)
    mod = list(cyclotomic_polynomial(n))
    rows: list[tuple[Fraction, ...]] = []
    cur = [_ONE]
    for e in range(size):
        padded = cur + [_ZERO] * (phi - len(cur))
        rows.append(tuple(padded[:phi]))
        cur = [_ZERO] + cur
        if len(cur) > phi:
            # subtract lead * z^phi == lead * (Phi_n - z^phi lower part)
            lead = cur.pop()
            if lead:
                for j in range(phi):
                    cur[j] -= lead * mod[j]
        while len(cur) < 1:
            cur = [_ZERO]
    return tuple(rows)


def _solve_dense(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve matrix @ x = rhs over Q; None when inconsistent."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, nrows) if aug[i][col]), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [_ZERO] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return x


class Cyc:
    """An exact element of a cyclotomic field."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: tuple[Fraction, ...], *, reduce: bool = True):
        self.n = n
        self.coeffs = coeffs
        self._hash: int | None = None
        if reduce and n > 1:
            self._minimize()

    # -- construction -------------------------------------------------

    @staticmethod
    def rational(value: Rat) -> "Cyc":
        return Cyc(1, (Fraction(value),), reduce=False)

    @staticmethod
    def zeta(n: int, power: int = 1) -> "Cyc":
        """zeta_n^power, the root of unity exp(2*pi*i*power/n)."""
        if n < 1:
            raise ValueError("order must be positive")
        power %= n
        if n == 1 or power % n == 0 and n == 1:
            return Cyc.rational(1)
        table = _reduction_table(n)
        return Cyc(n, table[power])

    @staticmethod
    def _coerce(value: "Cyc | Rat") -> "Cyc":
        if isinstance(value, Cyc):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyc.rational(value)
        raise TypeError(f"cannot interpret {value!r} as a cyclotomic number")

    # -- canonical form ------------------------------------------------

    def _minimize(self) -> None:
        # descend to the smallest subfield Q(zeta_m), m | n, containing self
        n, coeffs = self.n, self.coeffs
        changed = True
        while changed and n > 1:
            changed = False
            if all(c == 0 for c in coeffs[1:]):
                n, coeffs = 1, (coeffs[0],)
                break
            for p in _prime_factors(n):
                m = n // p
                table = _reduction_table(n)
                phi_m = euler_phi(m)
                basis = [table[(j * (n // m)) % n] for j in range(phi_m)]
                matrix = [[basis[j][i] for j in range(phi_m)] for i in range(len(coeffs))]
                sol = _solve_dense(matrix, list(coeffs))
                if sol is not None:
                    n = m
                    coeffs = tuple(sol)
                    changed = True
                    break
        self.n = n
        self.coeffs = coeffs

    def _lift(self, n: int) -> tuple[Fraction, ...]:
        """Coefficients of self in the power basis at conductor n (multiple of self.n)."""
        if n == self.n:
            return self.coeffs
        step = n // self.n
        table = _reduction_table(n)
        phi = euler_phi(n)
        out = [_ZERO] * phi
        for e, c in enumerate(self.coeffs):
            if c:
                row = table[(e * step) % n]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.n == 1 and self.coeffs[0].denominator == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Cyc | Rat") -> "Cyc":
        other = Cyc._coerce(other)
        if self.n == 1 and other.n == 1:
            return Cyc(1, (self.coeffs[0] + other.coeffs[0],), reduce=False)
        n = _lcm(self.n, other.n)
        a = self._lift(n)
        b = other._lift(n)
        return Cyc(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.n, tuple(-c for c in self.coeffs), reduce=False)

    def __sub__(self, other: "Cyc | Rat") -> "Cyc":
        return self + (-Cyc._coerce(other))

    def __rsub__(self, other: "Cyc | Rat") -> "Cyc":
        return Cyc._coerce(other) + (-self)

    def __mul__(self, other: "Cyc | Rat") -> "Cyc":
        other = Cyc._coerce(other)
        if self.n == 1 and other.n == 1:
            return Cyc(1, (self.coeffs[0] * other.coeffs[0],), reduce=False)
        if self.n == 1:
            q = self.coeffs[0]
            return Cyc(other.n, tuple(q * c for c in other.coeffs), reduce=False) if q else Cyc.rational(0)
        if other.n == 1:
            q = other.coeffs[0]
            return Cyc(self.n, tuple(q * c for c in self.coeffs), reduce=False) if q else Cyc.rational(0)
        n = _lcm(self.n, other.n)
        a = self._lift(n)
        b = other._lift(n)
        phi = euler_phi(n)
        conv = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        table = _reduction_table(n)
        out = [_ZERO] * phi
        for e, c in enumerate(conv):
            if c:
                if e < phi:
                    out[e] += c
                else:
                    row = table[e]
                    for i in range(phi):
                        if row[i]:
                            out[i] += c * row[i]
        return Cyc(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        if self.n == 1:
            return Cyc(1, (1 / self.coeffs[0],), reduce=False)
        # extended Euclid of self (as a polynomial) against Phi_n
        mod = list(cyclotomic_polynomial(self.n))
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        old_r, r = a, mod
        old_s: list[Fraction] = [_ONE]
        s: list[Fraction] = []
        while r:
            q, rem = _poly_divmod(old_r, r)
            old_r, r = r, rem
            qs = _poly_mul(q, s)
            new_s = _poly_sub(old_s, qs)
            old_s, s = s, new_s
        if len(old_r) != 1:
            raise ArithmeticError("element not invertible modulo the cyclotomic polynomial")
        inv_lead = 1 / old_r[0]
        phi = euler_phi(self.n)
        coeffs = [c * inv_lead for c in old_s] + [_ZERO] * phi
        return Cyc(self.n, tuple(coeffs[:phi]))

    def __truediv__(self, other: "Cyc | Rat") -> "Cyc":
        return self * Cyc._coerce(other).inverse()

    def __rtruediv__(self, other: "Cyc | Rat") -> "Cyc":
        return Cyc._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "Cyc":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyc.rational(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    # -- embedding ------------------------------------------------------

    def embed(self) -> complex:
        """Numeric value under zeta_n -> exp(2*pi*i/n)."""
        roots = _unit_roots(self.n)
        total = 0j
        for e, c in enumerate(self.coeffs):
            if c:
                total += float(c) * roots[e]
        return total

    def __repr__(self) -> str:
        return f"Cyc({self})"

    def __str__(self) -> str:
        if self.n == 1:
            return str(self.coeffs[0])
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.n}" if e == 1 else f"z{self.n}^{e}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    while out and not out[-1]:
        out.pop()
    return out


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _unit_roots(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / n) for k in range(max(n, 1)))


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


def cyc(value: Rat) -> Cyc:
    return Cyc.rational(value)


def zeta(n: int, power: int = 1) -> Cyc:
    return Cyc.zeta(n, power)
