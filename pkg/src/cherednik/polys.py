"""Sparse multivariate polynomials, parameter rational functions, and
truncated formal series.

One generic Poly class serves two layers: polynomials in the formal
deformation parameters (coefficients: Cyc) and polynomials in the x/y
coordinates (coefficients: ParamScalar). Exact division is the workhorse
that keeps Dunkl reflection terms polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Iterator

from .cyclotomic import Cyc, cyc


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


Expt = tuple[int, ...]


def _expt_add(a: Expt, b: Expt) -> Expt:
    return tuple(x + y for x, y in zip(a, b))


def _expt_sub(a: Expt, b: Expt) -> Expt:
    return tuple(x - y for x, y in zip(a, b))


def _expt_divides(a: Expt, b: Expt) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Expt, Any] | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def constant(nvars: int, coeff: Any) -> "Poly":
        if not coeff:
            return Poly(nvars)
        return Poly(nvars, {(0,) * nvars: coeff})

    @staticmethod
    def variable(nvars: int, index: int, one: Any) -> "Poly":
        e = [0] * nvars
        e[index] = 1
        return Poly(nvars, {tuple(e): one})

    @staticmethod
    def monomial(nvars: int, expt: Expt, coeff: Any) -> "Poly":
        if not coeff:
            return Poly(nvars)
        return Poly(nvars, {expt: coeff})

    def copy(self) -> "Poly":
        return Poly(self.nvars, dict(self.terms))

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_coeff(self) -> Any:
        return self.terms.get((0,) * self.nvars)

    # -- arithmetic -------------------------------------------------------

    def _iadd_term(self, expt: Expt, coeff: Any) -> None:
        cur = self.terms.get(expt)
        new = cur + coeff if cur is not None else coeff
        if new:
            self.terms[expt] = new
        else:
            self.terms.pop(expt, None)

    def __add__(self, other: "Poly") -> "Poly":
        out = self.copy()
        for e, c in other.terms.items():
            out._iadd_term(e, c)
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        out = self.copy()
        for e, c in other.terms.items():
            out._iadd_term(e, -c)
        return out

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out = Poly(self.nvars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out._iadd_term(_expt_add(e1, e2), c1 * c2)
        return out

    def scale(self, coeff: Any) -> "Poly":
        if not coeff:
            return Poly(self.nvars)
        return Poly(self.nvars, {e: c * coeff for e, c in self.terms.items()})

    def mul_monomial(self, expt: Expt, coeff: Any) -> "Poly":
        if not coeff:
            return Poly(self.nvars)
        return Poly(self.nvars, {_expt_add(e, expt): c * coeff for e, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    # -- leading data (lexicographic) --------------------------------------

    def leading(self) -> tuple[Expt, Any]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    # -- operations ---------------------------------------------------------

    def div_exact(self, divisor: "Poly") -> "Poly":
        """Quotient self / divisor when the division is exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly(self.nvars)
        lead_e, lead_c = divisor.leading()
        rem = self.copy()
        quot = Poly(self.nvars)
        while rem.terms:
            re = max(rem.terms)
            if not _expt_divides(lead_e, re):
                raise ExactDivisionError("non-exact polynomial division")
            factor = rem.terms[re] / lead_c
            qe = _expt_sub(re, lead_e)
            quot._iadd_term(qe, factor)
            for de, dc in divisor.terms.items():
                rem._iadd_term(_expt_add(de, qe), -(dc * factor))
        return quot

    def derivative(self, index: int) -> "Poly":
        out = Poly(self.nvars)
        for e, c in self.terms.items():
            k = e[index]
            if k:
                ne = list(e)
                ne[index] = k - 1
                out._iadd_term(tuple(ne), c * k)
        return out

    def map_coeffs(self, fn) -> "Poly":
        out = Poly(self.nvars)
        for e, c in self.terms.items():
            nc = fn(c)
            if nc:
                out.terms[e] = nc
        return out

    def evaluate(self, values: list[Any], one: Any) -> Any:
        total = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * values[i]
            total = term if total is None else total + term
        if total is None:
            return one - one
        return total

    def monomials(self) -> Iterator[tuple[Expt, Any]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"v{i}^{k}" if k > 1 else f"v{i}" for i, k in enumerate(e) if k
            )
            if mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"({c})")
        return " + ".join(parts)


def poly_divide_exact(p: Poly, q: Poly) -> Poly:
    return p.div_exact(q)


# ---------------------------------------------------------------------------
# rational functions in formal parameters over cyclotomic coefficients
# ---------------------------------------------------------------------------


class ParamRing:
    """Names the formal parameters (e.g. t, one c per reflection class)."""

    __slots__ = ("names", "_zero", "_one", "_cache")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        none: dict = {}
        self._cache = none
        self._zero = ParamScalar(self, Poly(len(self.names)), self._poly_one())
        self._one = ParamScalar(self, self._poly_one(), self._poly_one())

    def _poly_one(self) -> Poly:
        return Poly.constant(len(self.names), cyc(1))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> "ParamScalar":
        return self._zero

    @property
    def one(self) -> "ParamScalar":
        return self._one

    def var(self, name: str) -> "ParamScalar":
        idx = self.names.index(name)
        return ParamScalar(self, Poly.variable(self.nvars, idx, cyc(1)), self._poly_one())

    def const(self, value) -> "ParamScalar":
        if isinstance(value, ParamScalar):
            if value.ring is not self:
                raise ValueError("parameter ring mismatch")
            return value
        if not isinstance(value, Cyc):
            value = cyc(Fraction(value))
        return ParamScalar(self, Poly.constant(self.nvars, value), self._poly_one())

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __repr__(self) -> str:
        return f"ParamRing{self.names}"


class ParamScalar:
    """Rational function num/den in the ring's parameters, Cyc coefficients.

    Canonicalization keeps the denominator monic (lex leading coefficient 1)
    and clears it entirely whenever the division happens to be exact, so the
    ubiquitous polynomial case stays cheap. Equality cross-multiplies.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: ParamRing, num: Poly, den: Poly, *, normalize: bool = True):
        self.ring = ring
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self) -> None:
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator in parameter scalar")
        if self.num.is_zero():
            self.den = self.ring._poly_one()
            return
        if len(self.den.terms) == 1:
            e, c = next(iter(self.den.terms.items()))
            if sum(e) == 0:
                if c != cyc(1):
                    inv = c.inverse()
                    self.num = self.num.scale(inv)
                    self.den = self.ring._poly_one()
                return
            # monomial denominator: cancel when every numerator term divides
            if all(_expt_divides(e, ne) for ne in self.num.terms):
                inv = c.inverse()
                self.num = Poly(
                    self.num.nvars,
                    {_expt_sub(ne, e): nc * inv for ne, nc in self.num.terms.items()},
                )
                self.den = self.ring._poly_one()
                return
        else:
            try:
                self.num = self.num.div_exact(self.den)
                self.den = self.ring._poly_one()
                return
            except ExactDivisionError:
                pass
        _, lead = self.den.leading()
        if lead != cyc(1):
            inv = lead.inverse()
            self.num = self.num.scale(inv)
            self.den = self.den.scale(inv)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        e, c = self.den.leading()
        return sum(e) == 0 and c == cyc(1) and len(self.den.terms) == 1

    def constant_value(self) -> Cyc:
        """The Cyc value when self is a constant; raises otherwise."""
        if not self.is_polynomial() or self.num.total_degree() > 0:
            raise ValueError(f"{self} is not constant")
        c = self.num.constant_coeff()
        return c if c is not None else cyc(0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            if other.ring is not self.ring:
                raise ValueError("parameter ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if self.den == other.den:
            return ParamScalar(self.ring, self.num + other.num, self.den)
        return ParamScalar(
            self.ring,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar(self.ring, -self.num, self.den, normalize=False)

    def __sub__(self, other) -> "ParamScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ParamScalar":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        return ParamScalar(self.ring, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero parameter scalar")
        return ParamScalar(self.ring, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "ParamScalar":
        return self._coerce(other) / self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Cyc)):
            other = self.ring.const(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    # -- specialization -------------------------------------------------------

    def substitute(self, values: dict[str, Cyc | int | Fraction]) -> Cyc:
        vals = []
        for name in self.ring.names:
            v = values[name]
            vals.append(v if isinstance(v, Cyc) else cyc(Fraction(v)))
        num = self.num.evaluate(vals, cyc(1))
        den = self.den.evaluate(vals, cyc(1))
        return num / den

    def __repr__(self) -> str:
        return f"ParamScalar({self})"

    def __str__(self) -> str:
        num = _param_poly_str(self.num, self.ring.names)
        if self.is_polynomial():
            return num
        return f"({num}) / ({_param_poly_str(self.den, self.ring.names)})"


def _param_poly_str(p: Poly, names: tuple[str, ...]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
        )
        cs = str(c)
        if "+" in cs or "-" in cs[1:]:
            cs = f"({cs})"
        parts.append(f"{cs}*{mono}" if mono else cs)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# truncated formal series in the tau parameters
# ---------------------------------------------------------------------------


class SeriesRing:
    """Polynomials in formal tau variables truncated at total degree >= order."""

    __slots__ = ("names", "order")

    def __init__(self, names: Iterable[str], order: int = 2):
        if order < 1:
            raise ValueError("truncation order must be at least 1")
        self.names = tuple(names)
        self.order = order

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> "TruncatedSeries":
        return TruncatedSeries(self, {})

    @property
    def one(self) -> "TruncatedSeries":
        return TruncatedSeries(self, {(0,) * self.nvars: cyc(1)})

    def const(self, value) -> "TruncatedSeries":
        if not isinstance(value, Cyc):
            value = cyc(Fraction(value))
        if not value:
            return self.zero
        return TruncatedSeries(self, {(0,) * self.nvars: value})

    def var(self, name: str) -> "TruncatedSeries":
        idx = self.names.index(name)
        if self.order <= 1:
            return self.zero
        e = [0] * self.nvars
        e[idx] = 1
        return TruncatedSeries(self, {tuple(e): cyc(1)})

    def basis_monomials(self) -> list[Expt]:
        """All exponent tuples of total degree < order, sorted."""
        out: list[Expt] = []

        def rec(prefix: list[int], remaining: int, budget: int) -> None:
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for k in range(budget + 1):
                rec(prefix + [k], remaining - 1, budget - k)

        rec([], self.nvars, self.order - 1)
        return sorted(out)

    def __repr__(self) -> str:
        return f"SeriesRing({self.names}, order={self.order})"


class TruncatedSeries:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: SeriesRing, terms: dict[Expt, Cyc]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c and sum(e) < ring.order}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_term(self) -> Cyc:
        return self.terms.get((0,) * self.ring.nvars, cyc(0))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            new = cur + c if cur is not None else c
            if new:
                terms[e] = new
            else:
                terms.pop(e, None)
        return TruncatedSeries(self.ring, terms)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, Cyc):
            return TruncatedSeries(self.ring, {e: c * other for e, c in self.terms.items()})
        order = self.ring.order
        terms: dict[Expt, Cyc] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) >= order:
                    continue
                e = _expt_add(e1, e2)
                cur = terms.get(e)
                new = cur + c1 * c2 if cur is not None else c1 * c2
                if new:
                    terms[e] = new
                else:
                    terms.pop(e, None)
        return TruncatedSeries(self.ring, terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring.names == other.ring.names and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def scale(self, c: Cyc) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, {e: v * c for e, v in self.terms.items()})

    def at_zero(self) -> Cyc:
        """Specialize every tau variable to zero."""
        return self.constant_term()

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"

    def __str__(self) -> str:
        return _param_poly_str(Poly(self.ring.nvars, dict(self.terms)), self.ring.names)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """Truncated exp of a series with zero constant term."""
    if s.constant_term():
        raise ValueError("series_exp requires zero constant term")
    ring = s.ring
    result = ring.one
    power = ring.one
    factorial = 1
    for k in range(1, ring.order):
        power = power * s
        factorial *= k
        if power.is_zero():
            break
        result = result + power.scale(cyc(Fraction(1, factorial)))
    return result
