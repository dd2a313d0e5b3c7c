"""Orbifold fundamental groups of 2-orbifolds, coset enumeration, and
deformed quotient algebras over truncated parameter rings.

A genus-g signature with cone orders n_1..n_m presents the orbifold group

    < a_1, b_1, .., a_g, b_g, c_1, .., c_m |
      c_j^{n_j},  c_1 .. c_m = prod_l [a_l, b_l] >

The deformed algebra keeps the braid-level relators and replaces each
torsion relator by the monic polynomial prod_k (c_j - e^{2 pi i k / n_j}
e^{tau_kj}) over C[[tau]] truncated at a fixed order. For spherical
signatures the determinant of c_1..c_m in the deformed regular
representation forces a nonzero linear constraint on tau, so the
deformation cannot be flat; Euclidean and hyperbolic signatures carry no
such obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyc, cyc, zeta
from .linalg import Echelon
from .polys import SeriesRing, TruncatedSeries, series_exp

Word = tuple[int, ...]  # letters: 2k = generator k, 2k+1 = its inverse


def _inv_letter(x: int) -> int:
    return x ^ 1


def _inverse_word(word: Word) -> Word:
    return tuple(_inv_letter(x) for x in reversed(word))


@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    cone_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if any(n < 2 for n in self.cone_orders):
            raise ValueError("cone orders must be at least 2")

    @staticmethod
    def parse(text: str) -> "OrbifoldSignature":
        """Accepts 'g=0;2,3,5' (orders optional for positive genus)."""
        body = text.strip()
        m = body.split(";")
        if not m or not m[0].lower().startswith("g="):
            raise ValueError(f"malformed signature: {text!r}")
        genus = int(m[0][2:])
        orders: tuple[int, ...] = ()
        if len(m) > 1 and m[1].strip() not in ("", "-", "—"):
            orders = tuple(int(v) for v in m[1].split(",") if v.strip())
        return OrbifoldSignature(genus, orders)

    def chi_orb(self) -> Fraction:
        return Fraction(2 - 2 * self.genus) - sum(
            (1 - Fraction(1, n) for n in self.cone_orders), Fraction(0)
        )

    def curvature_class(self) -> str:
        chi = self.chi_orb()
        if chi > 0:
            return "spherical"
        if chi == 0:
            return "euclidean"
        return "hyperbolic"

    def __str__(self) -> str:
        orders = ",".join(str(n) for n in self.cone_orders)
        return f"g={self.genus};{orders}" if orders else f"g={self.genus};"


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def describe(self) -> str:
        names = self.generators

        def word_str(w: Word) -> str:
            parts = []
            for x in w:
                g = names[x // 2]
                parts.append(g if x % 2 == 0 else f"{g}^-1")
            return "*".join(parts) if parts else "1"

        rels = ", ".join(word_str(w) for w in self.relators)
        return f"< {', '.join(names)} | {rels} >"


def orbifold_presentation(sig: OrbifoldSignature) -> GroupPresentation:
    g, orders = sig.genus, sig.cone_orders
    generators = []
    for l in range(g):
        generators += [f"a{l + 1}", f"b{l + 1}"]
    generators += [f"c{j + 1}" for j in range(len(orders))]
    cone_base = 2 * g
    relators: list[Word] = []
    for j, n in enumerate(orders):
        letter = 2 * (cone_base + j)
        relators.append((letter,) * n)
    # c_1 .. c_m * (prod_l [a_l, b_l])^{-1}
    product: list[int] = [2 * (cone_base + j) for j in range(len(orders))]
    commutators: list[int] = []
    for l in range(g):
        a = 2 * (2 * l)
        b = 2 * (2 * l + 1)
        commutators += [a, b, _inv_letter(a), _inv_letter(b)]
    relators.append(tuple(product) + _inverse_word(tuple(commutators)))
    return GroupPresentation(tuple(generators), tuple(relators))


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration (HLT with coincidence handling)
# ---------------------------------------------------------------------------


@dataclass
class PermutationRep:
    degree: int
    perms: tuple[tuple[int, ...], ...]  # one permutation per generator

    def apply_word(self, word: Word, point: int) -> int:
        for x in word:
            perm = self.perms[x // 2]
            if x % 2 == 0:
                point = perm[point]
            else:
                point = perm.index(point)
        return point

    def relators_trivial(self, relators: Sequence[Word]) -> bool:
        return all(
            self.apply_word(rel, pt) == pt
            for rel in relators
            for pt in range(self.degree)
        )

    def element_order(self, gen: int) -> int:
        perm = self.perms[gen]
        order = 1
        current = perm
        while tuple(current) != tuple(range(self.degree)):
            current = tuple(perm[p] for p in current)
            order += 1
        return order

    def permutation_sign(self, gen: int) -> int:
        perm = self.perms[gen]
        seen = [False] * self.degree
        sign = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length = 0
            p = start
            while not seen[p]:
                seen[p] = True
                p = perm[p]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign


class CosetOverflow(Exception):
    """The enumeration hit the coset bound without closing (no verdict)."""


def todd_coxeter(pres: GroupPresentation, max_cosets: int = 10_000) -> PermutationRep:
    """Enumerate cosets of the trivial subgroup; deterministic HLT strategy.

    Raises CosetOverflow when more than max_cosets cosets get defined.
    """
    ngens = len(pres.generators)
    nlet = 2 * ngens
    table: list[list[int | None]] = [[None] * nlet]
    parent = [0]
    defined = 1
    merge_count = 0

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def merge(a: int, b: int, queue: list[int]) -> None:
        nonlocal merge_count
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        merge_count += 1
        queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        while queue:
            dead = queue.pop()
            for x in range(nlet):
                target = table[dead][x]
                if target is None:
                    continue
                table[dead][x] = None
                r_dead, r_target = rep(dead), rep(target)
                existing = table[r_dead][x]
                if existing is not None:
                    merge(r_target, existing, queue)
                else:
                    mirrored = table[r_target][_inv_letter(x)]
                    if mirrored is not None:
                        merge(r_dead, mirrored, queue)
                    else:
                        table[r_dead][x] = r_target
                        table[r_target][_inv_letter(x)] = r_dead

    def define(a: int, x: int) -> None:
        nonlocal defined
        b = len(table)
        table.append([None] * nlet)
        parent.append(b)
        table[a][x] = b
        table[b][_inv_letter(x)] = a
        defined += 1

    def scan_and_fill(start: int, word: Word) -> None:
        f, i = start, 0
        b, j = start, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt is None:
                    break
                f = rep(nxt)
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i:
                prv = table[b][_inv_letter(word[j])]
                if prv is None:
                    break
                b = rep(prv)
                j -= 1
            if j < i:
                if f != b:
                    coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][_inv_letter(word[i])] = f
                return
            define(f, word[i])

    alpha = 0
    while alpha < len(table):
        if rep(alpha) != alpha:
            alpha += 1
            continue
        for rel in pres.relators:
            # rescan after coincidences until the scan is stable
            while rep(alpha) == alpha:
                before = merge_count
                scan_and_fill(alpha, rel)
                if defined > max_cosets:
                    raise CosetOverflow(
                        f"exceeded {max_cosets} cosets for {pres.describe()}"
                    )
                if merge_count == before:
                    break
            if rep(alpha) != alpha:
                break
        if rep(alpha) == alpha:
            for x in range(nlet):
                if table[alpha][x] is None:
                    define(alpha, x)
                    if defined > max_cosets:
                        raise CosetOverflow(
                            f"exceeded {max_cosets} cosets for {pres.describe()}"
                        )
        alpha += 1

    live = [k for k in range(len(table)) if rep(k) == k]
    renumber = {k: i for i, k in enumerate(live)}
    perms = []
    for gen in range(ngens):
        images = []
        for k in live:
            target = table[k][2 * gen]
            if target is None:
                raise ArithmeticError("closed enumeration left an undefined entry")
            images.append(renumber[rep(target)])
        if sorted(images) != list(range(len(live))):
            raise ArithmeticError("generator image is not a permutation")
        perms.append(tuple(images))
    result = PermutationRep(len(live), tuple(perms))
    if not result.relators_trivial(pres.relators):
        raise ArithmeticError("relators do not act trivially after enumeration")
    return result


def orbifold_group_order(sig: OrbifoldSignature, max_cosets: int = 10_000) -> int:
    return todd_coxeter(orbifold_presentation(sig), max_cosets).degree


# ---------------------------------------------------------------------------
# the sphere determinant obstruction
# ---------------------------------------------------------------------------


class BadOrbifoldError(ValueError):
    """Cone generator order collapses in the group; the eigenvalue
    multiplicity rule does not apply."""


def sphere_obstruction(sig: OrbifoldSignature, max_cosets: int = 20_000) -> dict:
    """Linear constraint on tau forced by det(c_1..c_m) = 1 in the deformed
    regular representation of a spherical genus-0 orbifold group.

    Eigenvalues of c_j are the n_j local roots, each with multiplicity
    |G|/n_j, so det(c_1..c_m) = epsilon * exp(sum_j (|G|/n_j) sum_k tau_kj).
    Since the product of the c_j is a product of commutators (here: is the
    identity), its determinant is 1, forcing the linear form to vanish.
    """
    if sig.genus != 0:
        raise ValueError("the determinant obstruction is computed at genus 0")
    if sig.curvature_class() != "spherical":
        raise ValueError(f"signature {sig} is not spherical")
    pres = orbifold_presentation(sig)
    rep = todd_coxeter(pres, max_cosets)
    order = rep.degree
    if order == 1:
        raise ValueError("trivial orbifold group carries no obstruction")
    orders = sig.cone_orders
    for j, n in enumerate(orders):
        if order % n != 0 or rep.element_order(j) != n:
            raise BadOrbifoldError(
                f"cone generator c{j + 1} has order {rep.element_order(j)} != {n}"
            )
    coefficients = []
    labels = []
    for j, n in enumerate(orders):
        for k in range(1, n + 1):
            coefficients.append(order // n)
            labels.append(f"tau_{k},{j + 1}")
    # root-of-unity factor of the undeformed determinant
    eps_exponent = sum((n + 1) * (order // n) for n in orders)
    epsilon = -1 if eps_exponent % 2 else 1
    # independent check in the permutation representation
    perm_sign_product = 1
    for j in range(len(orders)):
        perm_sign_product *= rep.permutation_sign(j)
    product_is_identity = all(
        rep.apply_word(tuple(2 * j for j in range(len(orders))), p) == p
        for p in range(order)
    )
    epsilon_consistent = epsilon == 1 == perm_sign_product and product_is_identity
    return {
        "signature": str(sig),
        "group_order": order,
        "coefficients": coefficients,
        "labels": labels,
        "epsilon": epsilon,
        "epsilon_consistent": epsilon_consistent,
        "nonzero": any(coefficients),
        "verdict": "not flat for generic tau",
    }


def signature_verdict(sig: OrbifoldSignature, max_cosets: int = 10_000) -> dict:
    """Expected flatness of the deformed group algebra."""
    cls = sig.curvature_class()
    chi = sig.chi_orb()
    if cls == "spherical":
        order = orbifold_group_order(sig, max_cosets)
        verdict = "expected-not-flat" if order > 1 else "expected-flat"
        group_order: int | str = order
    else:
        verdict = "expected-flat"
        group_order = "infinite-or-unverified"
        try:
            group_order = orbifold_group_order(sig, max_cosets)
        except CosetOverflow:
            group_order = "infinite-or-unverified"
    return {
        "signature": str(sig),
        "chi_orb": str(chi),
        "curvature": cls,
        "group_order": group_order,
        "verdict": verdict,
    }


# ---------------------------------------------------------------------------
# deformed quotient algebras over the truncated tau ring
# ---------------------------------------------------------------------------


@dataclass
class HeckeAlgebraPresentation:
    generators: tuple[str, ...]
    series_ring: SeriesRing
    # braid-level relations as word pairs (left = right), positive words only;
    # used by the rank machinery (catalog presentations)
    braid_relations: tuple[tuple[Word, Word], ...]
    # generator index -> monic coefficient list (low to high) over the ring
    local_relations: tuple[tuple[int, tuple[TruncatedSeries, ...]], ...]
    cone_orders: tuple[int, ...]
    # braid-level relator words (letter alphabet, inverses allowed): the
    # group presentation with the torsion relators removed
    group_relators: tuple[Word, ...] = ()
    # index of the cone generator within `generators` for each local relation
    cone_generator_offset: int = 0

    def local_at_tau_zero(self) -> list[tuple[int, list[Cyc]]]:
        return [
            (gen, [coeff.at_zero() for coeff in poly])
            for gen, poly in self.local_relations
        ]


def cyclic_hecke(n: int, order: int = 2) -> HeckeAlgebraPresentation:
    """< T | prod_{j=1..n} (T - e^{2 pi i j / n} e^{tau_j}) >."""
    ring = SeriesRing(tuple(f"tau{j}" for j in range(1, n + 1)), order)
    roots = [
        series_exp(ring.var(f"tau{j}")).scale(zeta(n, j)) for j in range(1, n + 1)
    ]
    poly = _monic_from_roots(ring, roots)
    return HeckeAlgebraPresentation(
        generators=("T",),
        series_ring=ring,
        braid_relations=(),
        local_relations=((0, poly),),
        cone_orders=(n,),
    )


def a2_hecke(order: int = 2) -> HeckeAlgebraPresentation:
    """Braid relation T1 T2 T1 = T2 T1 T2 with the shared quadratic
    (T - e^{tau1})(T + e^{tau2}) = 0."""
    ring = SeriesRing(("tau1", "tau2"), order)
    r1 = series_exp(ring.var("tau1"))
    r2 = -series_exp(ring.var("tau2"))
    poly = _monic_from_roots(ring, [r1, r2])
    braid = (((0, 1, 0), (1, 0, 1)),)  # positive words of generator indices
    # letter form of T1 T2 T1 (T2 T1 T2)^-1 for the group presentation
    braid_relator: Word = (0, 2, 0, 3, 1, 3)
    return HeckeAlgebraPresentation(
        generators=("T1", "T2"),
        series_ring=ring,
        braid_relations=braid,
        local_relations=((0, poly), (1, poly)),
        cone_orders=(2, 2),
        group_relators=(braid_relator,),
    )


def _monic_from_roots(ring: SeriesRing, roots: list[TruncatedSeries]) -> tuple[TruncatedSeries, ...]:
    """Coefficients (low to high) of prod (T - r); leading coefficient 1."""
    coeffs: list[TruncatedSeries] = [ring.one]
    for root in roots:
        nxt: list[TruncatedSeries] = [ring.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        coeffs = nxt
    return tuple(coeffs)


def signature_hecke(sig: OrbifoldSignature, order: int = 2) -> HeckeAlgebraPresentation:
    """Deformed presentation of an orbifold group: same generators, the
    torsion relators replaced by the local polynomial relations."""
    names = []
    for j, n in enumerate(sig.cone_orders):
        names += [f"tau{k},{j + 1}" for k in range(1, n + 1)]
    ring = SeriesRing(tuple(names), order)
    locals_: list[tuple[int, tuple[TruncatedSeries, ...]]] = []
    for j, n in enumerate(sig.cone_orders):
        roots = [
            series_exp(ring.var(f"tau{k},{j + 1}")).scale(zeta(n, k))
            for k in range(1, n + 1)
        ]
        locals_.append((j, _monic_from_roots(ring, roots)))
    group_pres = orbifold_presentation(sig)
    product_relator = group_pres.relators[-1]  # the global product relation
    braid: tuple[tuple[Word, Word], ...] = ()
    if sig.genus == 0 and sig.cone_orders:
        # positive-pair form (c_1 .. c_m = 1) for the word-rank machinery
        braid = ((tuple(range(len(sig.cone_orders))), ()),)
    return HeckeAlgebraPresentation(
        generators=group_pres.generators,
        series_ring=ring,
        braid_relations=braid,
        local_relations=tuple(locals_),
        cone_orders=sig.cone_orders,
        group_relators=(product_relator,),
        cone_generator_offset=2 * sig.genus,
    )


def specialize_tau_zero(h: HeckeAlgebraPresentation) -> dict:
    """At tau = 0 every local polynomial must reduce to T^n - 1, so the
    quotient presentation is the group presentation with torsion restored."""
    details = []
    ok = True
    torsion: list[Word] = []
    for gen, coeffs in h.local_at_tau_zero():
        n = len(coeffs) - 1
        expected = [cyc(-1)] + [cyc(0)] * (n - 1) + [cyc(1)]
        matches = coeffs == expected
        ok = ok and matches
        torsion.append((2 * (h.cone_generator_offset + gen),) * n)
        details.append(
            {
                "generator": h.generators[h.cone_generator_offset + gen],
                "order": n,
                "coefficients": [str(c) for c in coeffs],
                "is_power_relation": matches,
            }
        )
    presentation = GroupPresentation(
        h.generators, tuple(torsion) + tuple(h.group_relators)
    )
    return {"passed": ok, "relations": details, "presentation": presentation}


def specialization_matches_orbifold(sig: OrbifoldSignature, order: int = 2) -> bool:
    """The tau = 0 presentation of the deformation equals the orbifold one
    (same generators, same relator set)."""
    spec = specialize_tau_zero(signature_hecke(sig, order))
    if not spec["passed"]:
        return False
    got: GroupPresentation = spec["presentation"]
    want = orbifold_presentation(sig)
    return got.generators == want.generators and set(got.relators) == set(want.relators)


# -- rank of the truncated quotient by exact linear algebra ------------------


def _words_up_to(ngens: int, length: int) -> list[Word]:
    words: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for g in range(ngens):
                nxt.append(w + (g,))
        words += nxt
        frontier = nxt
    return words


def hecke_rank(h: HeckeAlgebraPresentation, length_cap: int) -> dict:
    """Dimension over the truncated series ring of the span of words of
    length <= cap modulo the two-sided relation instances.

    The module is handled as a plain vector space over the scalars: the
    truncated ring R is finite dimensional, columns are (word, R-basis
    monomial) pairs, and every relation instance is multiplied by every
    R-basis monomial so the quotient is an R-module quotient. The R-rank is
    dim_C(quotient) / dim_C(R), with freeness certified by comparing
    against the tau = 0 quotient dimension.
    """
    ngens = len(h.generators)
    ring = h.series_ring
    words = _words_up_to(ngens, length_cap)
    word_index = {w: i for i, w in enumerate(words)}
    basis = ring.basis_monomials()
    basis_index = {m: i for i, m in enumerate(basis)}
    dim_r = len(basis)

    def col(word: Word, mono) -> int:
        return word_index[word] * dim_r + basis_index[mono]

    # relation elements: word -> TruncatedSeries
    relations: list[dict[Word, TruncatedSeries]] = []
    for gen, coeffs in h.local_relations:
        rel = {(gen,) * k: coeffs[k] for k in range(len(coeffs)) if coeffs[k]}
        relations.append(rel)
    for left, right in h.braid_relations:
        relations.append({left: ring.one, right: -ring.one})

    ech = Echelon()
    ech0 = Echelon()
    for rel in relations:
        deg = max(len(w) for w in rel)
        for u in words:
            if len(u) + deg > length_cap:
                continue
            for v in words:
                if len(u) + deg + len(v) > length_cap:
                    continue
                instance = {u + w + v: series for w, series in rel.items()}
                for mono in basis:
                    vector: dict[int, Cyc] = {}
                    mono_series = TruncatedSeries(ring, {mono: cyc(1)})
                    for word, series in instance.items():
                        shifted = mono_series * series
                        for e, coeff in shifted.terms.items():
                            vector[col(word, e)] = coeff
                    if vector:
                        ech.add(vector)
                vec0: dict[int, Cyc] = {}
                for word, series in instance.items():
                    c0 = series.at_zero()
                    if c0:
                        vec0[word_index[word]] = c0
                if vec0:
                    ech0.add(vec0)

    dim_total = len(words) * dim_r - ech.rank
    dim_zero = len(words) - ech0.rank
    free = dim_total == dim_zero * dim_r
    rank = dim_total // dim_r if dim_total % dim_r == 0 else None
    return {
        "length_cap": length_cap,
        "words": len(words),
        "ring_dimension": dim_r,
        "quotient_dimension": dim_total,
        "tau_zero_dimension": dim_zero,
        "rank": rank,
        "free": free,
    }


def hecke_dimension(h: HeckeAlgebraPresentation, normal_form_length: int) -> dict:
    """Rank over the truncated ring with a stabilization check at the next cap."""
    first = hecke_rank(h, normal_form_length + 1)
    second = hecke_rank(h, normal_form_length + 2)
    stable = first["rank"] is not None and first["rank"] == second["rank"]
    passed = stable and first["free"] and second["free"]
    return {
        "passed": passed,
        "stable": stable,
        "rank": first["rank"],
        "free": first["free"] and second["free"],
        "caps": [first, second],
    }
