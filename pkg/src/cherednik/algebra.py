"""PBW normal forms and rewriting multiplication for the deformed
smash-product algebra attached to a reflection group.

Elements are finitely supported maps (x-monomial, group element,
y-monomial) -> coefficient, the normal form with coordinates on the
left, the group in the middle, and directions on the right. A product
is normalized by repeatedly moving each y past an x via

    [y, x] = t (y, x) - sum_s c_s (y, alpha_s) (x, alpha_s^vee) s

and moving group elements left via g x = (g.x) g, y g = g (g^-1.y).
Each rewrite strictly lowers (y-degree, x-degree) lexicographically, so
the process terminates; consistency with the faithful polynomial
representation is checked separately.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .cyclotomic import cyc
from .dunkl import DunklOperator, _MonomialCache, act_on_poly, make_param_ring, monomials_up_to
from .groups import ReflectionGroup
from .linalg import Echelon, nullspace
from .polys import ParamRing, ParamScalar, Poly

Key = tuple[tuple[int, ...], int, tuple[int, ...]]


class CherednikAlgebra:
    """Rewriting context for one group and one parameter assignment."""

    def __init__(
        self,
        group: ReflectionGroup,
        ring: ParamRing | None = None,
        t: ParamScalar | None = None,
        c: tuple[ParamScalar, ...] | None = None,
    ):
        self.group = group
        if ring is None:
            ring = make_param_ring(group)
            t = ring.var("t")
            c = tuple(ring.var(f"c{k}") for k in range(len(group.classes)))
        if t is None or c is None:
            raise ValueError("explicit rings need explicit t and c")
        self.ring = ring
        self.t = t
        self.c = c
        self.dim = group.dim
        self._zero_e = (0,) * self.dim
        # commutation core: [y_i, x_j] = sum_g rel[i][j][g] * g
        self._rel: list[list[dict[int, ParamScalar]]] = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                entry: dict[int, ParamScalar] = {}
                if i == j and t:
                    entry[0] = t
                for refl in group.reflections:
                    y_pair = refl.root[i]  # (y_i, alpha_s)
                    x_pair = refl.coroot[j]  # (x_j, alpha_s^vee)
                    if not y_pair or not x_pair:
                        continue
                    coeff = -(self.c[refl.class_label] * ring.const(y_pair * x_pair))
                    if not coeff:
                        continue
                    cur = entry.get(refl.element)
                    new = cur + coeff if cur is not None else coeff
                    if new:
                        entry[refl.element] = new
                    else:
                        entry.pop(refl.element, None)
                row.append(entry)
            self._rel.append(row)
        self._yi_memo: dict[tuple[int, tuple[int, ...]], tuple[tuple[Key, ParamScalar], ...]] = {}
        self._ymono_memo: dict[tuple[tuple[int, ...], tuple[int, ...]], dict[Key, ParamScalar]] = {}
        self._dunkl_caches: dict[int, _MonomialCache] = {}

    # -- constructors for common parameter regimes ---------------------------

    @staticmethod
    def formal(group: ReflectionGroup) -> "CherednikAlgebra":
        return CherednikAlgebra(group)

    @staticmethod
    def specialized(group: ReflectionGroup, t_value, c_values: Sequence) -> "CherednikAlgebra":
        ring = ParamRing(())
        t = ring.const(t_value)
        c = tuple(ring.const(v) for v in c_values)
        return CherednikAlgebra(group, ring, t, c)

    @staticmethod
    def at_t0(group: ReflectionGroup) -> "CherednikAlgebra":
        """Formal c, t specialized to zero (for center/spherical checks)."""
        ring = ParamRing(tuple(f"c{k}" for k in range(len(group.classes))))
        t = ring.zero
        c = tuple(ring.var(f"c{k}") for k in range(len(group.classes)))
        return CherednikAlgebra(group, ring, t, c)

    # -- element constructors -------------------------------------------------

    def zero(self) -> "PBWElement":
        return PBWElement(self, {})

    def one(self) -> "PBWElement":
        return PBWElement(self, {(self._zero_e, 0, self._zero_e): self.ring.one})

    def scalar(self, value) -> "PBWElement":
        coeff = value if isinstance(value, ParamScalar) else self.ring.const(value)
        if not coeff:
            return self.zero()
        return PBWElement(self, {(self._zero_e, 0, self._zero_e): coeff})

    def x(self, i: int) -> "PBWElement":
        e = [0] * self.dim
        e[i] = 1
        return PBWElement(self, {(tuple(e), 0, self._zero_e): self.ring.one})

    def y(self, i: int) -> "PBWElement":
        e = [0] * self.dim
        e[i] = 1
        return PBWElement(self, {(self._zero_e, 0, tuple(e)): self.ring.one})

    def g(self, gidx: int) -> "PBWElement":
        return PBWElement(self, {(self._zero_e, gidx, self._zero_e): self.ring.one})

    def monomial(self, key: Key, coeff=None) -> "PBWElement":
        return PBWElement(self, {key: coeff if coeff is not None else self.ring.one})

    def symmetrizer(self) -> "PBWElement":
        inv = self.ring.const(Fraction(1, self.group.order))
        return PBWElement(
            self, {(self._zero_e, g, self._zero_e): inv for g in range(self.group.order)}
        )

    # -- rewriting core ---------------------------------------------------------

    def _yi_past_x(self, i: int, xe: tuple[int, ...]) -> tuple[tuple[Key, ParamScalar], ...]:
        memo = self._yi_memo.get((i, xe))
        if memo is not None:
            return memo
        if sum(xe) == 0:
            ye = [0] * self.dim
            ye[i] = 1
            memo = (((self._zero_e, 0, tuple(ye)), self.ring.one),)
            self._yi_memo[(i, xe)] = memo
            return memo
        j = next(k for k, v in enumerate(xe) if v)
        rest = list(xe)
        rest[j] -= 1
        rest_t = tuple(rest)
        acc: dict[Key, ParamScalar] = {}

        def add(key: Key, coeff: ParamScalar) -> None:
            cur = acc.get(key)
            new = cur + coeff if cur is not None else coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)

        for (a, g, b), co in self._yi_past_x(i, rest_t):
            na = list(a)
            na[j] += 1
            add((tuple(na), g, b), co)
        for gidx, co in self._rel[i][j].items():
            new_e, factor = self.group.act_on_coord_monomial(gidx, rest_t)
            add((new_e, gidx, self._zero_e), co * factor if factor != cyc(1) else co)
        memo = tuple(acc.items())
        self._yi_memo[(i, xe)] = memo
        return memo

    def _ymono_past_x(self, ye: tuple[int, ...], xe: tuple[int, ...]) -> dict[Key, ParamScalar]:
        if sum(ye) == 0:
            return {(xe, 0, self._zero_e): self.ring.one}
        memo = self._ymono_memo.get((ye, xe))
        if memo is not None:
            return memo
        i = max(k for k, v in enumerate(ye) if v)
        rest_y = list(ye)
        rest_y[i] -= 1
        rest_y_t = tuple(rest_y)
        out: dict[Key, ParamScalar] = {}
        for (p, g, q), co in self._yi_past_x(i, xe):
            inner = self._ymono_past_x(rest_y_t, p)
            g_inv = self.group.inverse[g]
            for (p2, g2, q2), co2 in inner.items():
                if sum(q2):
                    q3, factor = self.group.act_on_vector_monomial(g_inv, q2)
                    coeff = co * co2 * factor if factor != cyc(1) else co * co2
                else:
                    q3, coeff = q2, co * co2
                key = (
                    p2,
                    self.group.mult[g2][g],
                    tuple(u + v for u, v in zip(q3, q)),
                )
                cur = out.get(key)
                new = cur + coeff if cur is not None else coeff
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        self._ymono_memo[(ye, xe)] = out
        return out

    def _mul_keys(self, k1: Key, k2: Key) -> Iterable[tuple[Key, ParamScalar]]:
        (a, g, b), (c_, h, d) = k1, k2
        h_inv = self.group.inverse[h]
        for (p, g1, q), co in self._ymono_past_x(b, c_).items():
            if sum(p):
                p2, f1 = self.group.act_on_coord_monomial(g, p)
            else:
                p2, f1 = p, cyc(1)
            if sum(q):
                q2, f2 = self.group.act_on_vector_monomial(h_inv, q)
            else:
                q2, f2 = q, cyc(1)
            factor = f1 * f2
            coeff = co * factor if factor != cyc(1) else co
            key = (
                tuple(u + v for u, v in zip(a, p2)),
                self.group.mult[self.group.mult[g][g1]][h],
                tuple(u + v for u, v in zip(q2, d)),
            )
            yield key, coeff

    def multiply(self, lhs: "PBWElement", rhs: "PBWElement") -> "PBWElement":
        out: dict[Key, ParamScalar] = {}
        for k1, c1 in lhs.terms.items():
            for k2, c2 in rhs.terms.items():
                c12 = c1 * c2
                if not c12:
                    continue
                for key, coeff in self._mul_keys(k1, k2):
                    total = c12 * coeff
                    cur = out.get(key)
                    new = cur + total if cur is not None else total
                    if new:
                        out[key] = new
                    else:
                        out.pop(key, None)
        return PBWElement(self, out)

    # -- polynomial representation ----------------------------------------------

    def _dunkl_cache(self, i: int) -> _MonomialCache:
        cache = self._dunkl_caches.get(i)
        if cache is None:
            cache = _MonomialCache(DunklOperator.basis(self.group, i, self.t, self.c))
            self._dunkl_caches[i] = cache
        return cache

    def act(self, element: "PBWElement", p: Poly) -> Poly:
        """Faithful representation: x multiplies, g acts, y differentiates."""
        out = Poly(self.dim)
        for (a, g, b), coeff in element.terms.items():
            cur = p
            for i in range(self.dim - 1, -1, -1):
                for _ in range(b[i]):
                    cur = self._dunkl_cache(i).apply(cur)
            if g:
                cur = act_on_poly(self.group, g, cur)
            if sum(a):
                cur = cur.mul_monomial(a, self.ring.one)
            for e, c_ in cur.terms.items():
                out._iadd_term(e, c_ * coeff)
        return out

    def act_letter(self, letter: tuple[str, int], p: Poly) -> Poly:
        kind, idx = letter
        if kind == "x":
            e = [0] * self.dim
            e[idx] = 1
            return p.mul_monomial(tuple(e), self.ring.one)
        if kind == "y":
            return self._dunkl_cache(idx).apply(p)
        return act_on_poly(self.group, idx, p)

    def element_of_word(self, word: Sequence[tuple[str, int]]) -> "PBWElement":
        result = self.one()
        for letter in word:
            kind, idx = letter
            if kind == "x":
                nxt = self.x(idx)
            elif kind == "y":
                nxt = self.y(idx)
            else:
                nxt = self.g(idx)
            result = self.multiply(result, nxt)
        return result


class PBWElement:
    """A finitely supported normal-form combination."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CherednikAlgebra, terms: dict[Key, ParamScalar]):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "PBWElement") -> "PBWElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            new = cur + v if cur is not None else v
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return PBWElement(self.algebra, out)

    def __neg__(self) -> "PBWElement":
        return PBWElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        return self + (-other)

    def __mul__(self, other: "PBWElement") -> "PBWElement":
        return self.algebra.multiply(self, other)

    def scale(self, coeff) -> "PBWElement":
        coeff = coeff if isinstance(coeff, ParamScalar) else self.algebra.ring.const(coeff)
        if not coeff:
            return PBWElement(self.algebra, {})
        return PBWElement(self.algebra, {k: v * coeff for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def commutator(self, other: "PBWElement") -> "PBWElement":
        return self * other - other * self

    def xy_degree(self) -> int:
        """Total degree in x and y jointly (group elements count 0)."""
        return max((sum(a) + sum(b) for (a, _, b) in self.terms), default=-1)

    def filtration_degree(self) -> int:
        """Largest y-degree present (the PBW filtration weight)."""
        return max((sum(b) for (_, _, b) in self.terms), default=-1)

    def top_symbol(self) -> dict[Key, ParamScalar]:
        """Terms of maximal y-degree (the associated-graded image)."""
        top = self.filtration_degree()
        return {k: v for k, v in self.terms.items() if sum(k[2]) == top}

    def group_left_mul(self, gidx: int) -> "PBWElement":
        group = self.algebra.group
        out: dict[Key, ParamScalar] = {}
        for (a, h, b), coeff in self.terms.items():
            na, factor = group.act_on_coord_monomial(gidx, a) if sum(a) else (a, cyc(1))
            key = (na, group.mult[gidx][h], b)
            val = coeff * factor if factor != cyc(1) else coeff
            cur = out.get(key)
            new = cur + val if cur is not None else val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return PBWElement(self.algebra, out)

    def canonical_str(self) -> str:
        """Stable text form: sorted triples with exact coefficients."""
        lines = []
        for key in sorted(self.terms):
            a, g, b = key
            coeff = self.terms[key]
            lines.append(f"x{list(a)} g{g} y{list(b)} : {coeff}")
        return "\n".join(lines) if lines else "0"

    def __repr__(self) -> str:
        return f"PBWElement<{len(self.terms)} terms>"


# ---------------------------------------------------------------------------
# named constructions and checks
# ---------------------------------------------------------------------------


def euler_element(algebra: CherednikAlgebra) -> PBWElement:
    """h = sum_i x_i y_i + (dim * t)/2 - sum_s (2 c_s / (1 - lambda_s)) s."""
    group = algebra.group
    ring = algebra.ring
    h = algebra.zero()
    for i in range(algebra.dim):
        h = h + algebra.multiply(algebra.x(i), algebra.y(i))
    h = h + algebra.scalar(algebra.t * ring.const(Fraction(algebra.dim, 2)))
    for refl in group.reflections:
        coeff = algebra.c[refl.class_label] * ring.const(cyc(2) / (cyc(1) - refl.eigenvalue))
        h = h - algebra.g(refl.element).scale(coeff)
    return h


def euler_check(algebra: CherednikAlgebra) -> dict:
    """[h, x_i] = t x_i and [h, y_i] = -t y_i, exactly."""
    h = euler_element(algebra)
    failures = []
    for i in range(algebra.dim):
        lhs = h.commutator(algebra.x(i))
        if lhs != algebra.x(i).scale(algebra.t):
            failures.append({"generator": f"x{i}", "got": lhs.canonical_str()})
        lhs = h.commutator(algebra.y(i))
        if lhs != algebra.y(i).scale(-algebra.t):
            failures.append({"generator": f"y{i}", "got": lhs.canonical_str()})
    return {
        "passed": not failures,
        "group": algebra.group.name,
        "euler": h.canonical_str(),
        "witness": failures or None,
    }


def pbw_target_dimension(group: ReflectionGroup, d: int) -> int:
    return group.order * comb(2 * group.dim + d, 2 * group.dim)


def _pbw_rank(algebra: CherednikAlgebra, d: int, target: int) -> int:
    """Rank of the span of all normal forms of length-<=d generator words
    (with arbitrary group prefixes)."""
    group = algebra.group
    dim = algebra.dim
    letters = [("x", i) for i in range(dim)] + [("y", i) for i in range(dim)]
    col_index: dict[Key, int] = {}

    def vec_of(elt: PBWElement) -> dict[int, ParamScalar]:
        v = {}
        for key, coeff in elt.terms.items():
            idx = col_index.setdefault(key, len(col_index))
            v[idx] = coeff
        return v

    ech = Echelon()
    frontier = [algebra.one()]
    for g in range(group.order):
        ech.add(vec_of(frontier[0].group_left_mul(g) if g else frontier[0]))
    for _ in range(d):
        nxt = []
        for elt in frontier:
            for letter in letters:
                kind, idx = letter
                step = algebra.x(idx) if kind == "x" else algebra.y(idx)
                prod = algebra.multiply(elt, step)
                nxt.append(prod)
                for g in range(group.order):
                    ech.add(vec_of(prod.group_left_mul(g) if g else prod))
                    if ech.rank == target:
                        return target
        frontier = nxt
    return ech.rank


def pbw_dimension(group: ReflectionGroup, d: int) -> dict:
    """Span of length-<=d words equals the graded truncation of the
    associated graded algebra: |G| * #monomials of degree <= d in 2*dim vars.

    The span always sits inside that monomial space, so reaching the target
    rank at one parameter specialization certifies the formal rank (ranks
    only drop under specialization). Distinct specializations are tried
    before falling back to the fully formal field.
    """
    target = pbw_target_dimension(group, d)
    nclasses = len(group.classes)
    specializations = [
        (Fraction(1), [Fraction(1, 3 + 2 * k) for k in range(nclasses)]),
        (Fraction(1), [Fraction(2 + k, 7) for k in range(nclasses)]),
    ]
    for t_val, c_vals in specializations:
        algebra = CherednikAlgebra.specialized(group, t_val, c_vals)
        got = _pbw_rank(algebra, d, target)
        if got == target:
            return {
                "passed": True,
                "group": group.name,
                "degree": d,
                "dimension": got,
                "expected": target,
                "method": "specialized",
            }
    algebra = CherednikAlgebra.formal(group)
    got = _pbw_rank(algebra, d, target)
    return {
        "passed": got == target,
        "group": group.name,
        "degree": d,
        "dimension": got,
        "expected": target,
        "method": "formal",
    }


def dunkl_consistency(
    algebra: CherednikAlgebra,
    word_a: Sequence[tuple[str, int]],
    word_b: Sequence[tuple[str, int]],
    monomials: Sequence[tuple[int, ...]],
) -> dict:
    """rho(a b) = rho(a) rho(b) on test polynomials, both sides exact."""
    elt_a = algebra.element_of_word(word_a)
    elt_b = algebra.element_of_word(word_b)
    product = algebra.multiply(elt_a, elt_b)
    for expt in monomials:
        p = Poly.monomial(algebra.dim, expt, algebra.ring.one)
        via_product = algebra.act(product, p)
        via_factors = algebra.act(elt_a, algebra.act(elt_b, p))
        if via_product != via_factors:
            return {
                "passed": False,
                "witness": {
                    "word_a": list(word_a),
                    "word_b": list(word_b),
                    "monomial": list(expt),
                },
            }
    return {"passed": True, "witness": None}


def consistency_sweep(group: ReflectionGroup, n_pairs: int, max_len: int, maxdeg: int, seed: int) -> dict:
    """Randomized faithfulness sweep with a deterministic seed."""
    import random

    rng = random.Random(seed)
    algebra = CherednikAlgebra.formal(group)
    dim = group.dim
    letters = (
        [("x", i) for i in range(dim)]
        + [("y", i) for i in range(dim)]
        + [("g", g) for g in range(group.order)]
    )
    monos = monomials_up_to(dim, maxdeg)
    checked = 0
    for _ in range(n_pairs):
        word_a = [rng.choice(letters) for _ in range(rng.randint(0, max_len))]
        word_b = [rng.choice(letters) for _ in range(rng.randint(0, max_len))]
        test_monos = [rng.choice(monos), rng.choice(monos)]
        report = dunkl_consistency(algebra, word_a, word_b, test_monos)
        checked += 1
        if not report["passed"]:
            report["group"] = group.name
            report["pairs_checked"] = checked
            return report
    return {"passed": True, "group": group.name, "pairs_checked": checked, "witness": None}


# ---------------------------------------------------------------------------
# t = 0 center and the spherical comparison
# ---------------------------------------------------------------------------


def _pbw_keys_up_to(group: ReflectionGroup, d: int) -> list[Key]:
    keys = []
    for a in monomials_up_to(group.dim, d):
        rem = d - sum(a)
        for b in monomials_up_to(group.dim, rem):
            for g in range(group.order):
                keys.append((a, g, b))
    keys.sort()
    return keys


def center_basis_t0(group: ReflectionGroup, d: int) -> list[PBWElement]:
    """Basis of elements of x,y-degree <= d commuting with all generators,
    at t = 0 with formal c."""
    algebra = CherednikAlgebra.at_t0(group)
    basis_keys = _pbw_keys_up_to(group, d)
    col_of = {k: i for i, k in enumerate(basis_keys)}
    gens: list[PBWElement] = [algebra.x(i) for i in range(group.dim)]
    gens += [algebra.y(i) for i in range(group.dim)]
    gens += [algebra.g(g) for g in group.generators]
    rows: list[dict[int, ParamScalar]] = []
    row_index: dict[tuple[int, Key], int] = {}
    columns: list[dict[int, ParamScalar]] = [dict() for _ in basis_keys]
    for col, key in enumerate(basis_keys):
        mono = algebra.monomial(key)
        for gi, gen in enumerate(gens):
            comm = mono * gen - gen * mono
            for k, coeff in comm.terms.items():
                ridx = row_index.setdefault((gi, k), len(row_index))
                columns[col][ridx] = coeff
    nrows = len(row_index)
    matrix_rows: list[dict[int, ParamScalar]] = [dict() for _ in range(nrows)]
    for col, column in enumerate(columns):
        for ridx, coeff in column.items():
            matrix_rows[ridx][col] = coeff
    kernel = nullspace(matrix_rows, len(basis_keys), algebra.ring.one)
    out = []
    for vec in kernel:
        terms = {basis_keys[c]: v for c, v in vec.items()}
        out.append(PBWElement(algebra, terms))
    out.sort(key=lambda z: sorted(z.terms))
    return out


def satake_check_t0(group: ReflectionGroup, d: int) -> dict:
    """z -> z e is a bijection from the degree-<=d center onto the
    degree-<=d spherical truncation at t = 0 (exact ranks)."""
    center = center_basis_t0(group, d)
    if not center:
        return {"passed": False, "group": group.name, "degree": d, "witness": "empty center"}
    algebra = center[0].algebra
    e = algebra.symmetrizer()
    if e * e != e:
        return {"passed": False, "group": group.name, "degree": d, "witness": "symmetrizer not idempotent"}
    col_index: dict[Key, int] = {}

    def vec_of(elt: PBWElement) -> dict[int, ParamScalar]:
        v = {}
        for key, coeff in elt.terms.items():
            idx = col_index.setdefault(key, len(col_index))
            v[idx] = coeff
        return v

    image_ech = Echelon()
    injective = True
    for z in center:
        if not image_ech.add(vec_of(z * e)):
            injective = False
    ambient_ech = Echelon()
    for key in _pbw_keys_up_to(group, d):
        m = algebra.monomial(key)
        ambient_ech.add(vec_of(e * m * e))
    surjective = ambient_ech.rank == image_ech.rank
    passed = injective and surjective and image_ech.rank == len(center)
    return {
        "passed": passed,
        "group": group.name,
        "degree": d,
        "center_dimension": len(center),
        "image_rank": image_ech.rank,
        "spherical_dimension": ambient_ech.rank,
        "witness": None
        if passed
        else {"injective": injective, "surjective": surjective},
    }
