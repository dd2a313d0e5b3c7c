"""Finite complex reflection group data.

Groups are realized by exact matrices over cyclotomic numbers. Every
catalog group (cyclic, symmetric on its permutation representation,
dihedral in complex coordinates, hyperoctahedral) consists of monomial
matrices, which keeps the action on monomials a monomial-to-monomial map.

Conventions: matrices act on column vectors of V (the reflection
representation). The action on coordinates (linear forms) x_i is
x |-> x . g^{-1}, i.e. by the inverse-transpose matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import re

from .cyclotomic import Cyc, cyc, zeta
from .linalg import nullspace

Matrix = tuple[tuple[Cyc, ...], ...]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), cyc(0)) for j in range(n))
        for i in range(n)
    )


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(cyc(1 if i == j else 0) for j in range(n)) for i in range(n))


def mat_transpose(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))


def mat_trace(a: Matrix) -> Cyc:
    total = cyc(0)
    for i in range(len(a)):
        total = total + a[i][i]
    return total


@dataclass(frozen=True)
class Reflection:
    """Per-element reflection data."""

    element: int  # index into the group element list
    class_label: int  # shared by conjugate reflections
    eigenvalue: Cyc  # the nontrivial eigenvalue on coordinates (dual space)
    root: tuple[Cyc, ...]  # linear form vanishing on the mirror
    coroot: tuple[Cyc, ...]  # vector in V, paired with root to 2


@dataclass(frozen=True)
class ReflectionClass:
    label: int
    representative: int
    eigenvalue: Cyc
    members: tuple[int, ...]


class ReflectionGroup:
    """A finite matrix group with its reflection data precomputed."""

    def __init__(self, name: str, matrices: list[Matrix]):
        self.name = name
        self.dim = len(matrices[0])
        self.elements: list[Matrix] = list(matrices)
        index = {m: i for i, m in enumerate(self.elements)}
        if mat_identity(self.dim) != self.elements[0]:
            raise ValueError("element 0 must be the identity")
        n = len(self.elements)
        self.mult = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                prod = mat_mul(a, b)
                k = index.get(prod)
                if k is None:
                    raise ValueError("matrix list is not closed under multiplication")
                self.mult[i][j] = k
        self.inverse = [0] * n
        for i in range(n):
            for j in range(n):
                if self.mult[i][j] == 0:
                    self.inverse[i] = j
                    break
        self.conjugacy_classes = self._conjugacy_classes()
        # x_i |-> sum_j (M^-1)_{ij} x_j: the coordinate action reads rows of M^-1
        self._coord_action = [self._monomial_data(self.elements[self.inverse[g]]) for g in range(n)]
        self._vector_action = [self._monomial_data(self.elements[g]) for g in range(n)]
        self.reflections: list[Reflection] = []
        self.classes: list[ReflectionClass] = []
        self.generators: tuple[int, ...] = tuple(range(1, n))  # closure may narrow this
        self._find_reflections()

    # -- structure ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def _conjugacy_classes(self) -> list[tuple[int, ...]]:
        n = len(self.elements)
        seen = [False] * n
        classes = []
        for i in range(n):
            if seen[i]:
                continue
            orbit = set()
            for h in range(n):
                k = self.mult[self.mult[h][i]][self.inverse[h]]
                orbit.add(k)
            for k in orbit:
                seen[k] = True
            classes.append(tuple(sorted(orbit)))
        return classes

    def element_order(self, g: int) -> int:
        k, cur = 1, g
        while cur != 0:
            cur = self.mult[cur][g]
            k += 1
        return k

    def _monomial_data(self, m: Matrix) -> tuple[tuple[int, ...], tuple[Cyc, ...]] | None:
        """For a monomial matrix: row i has its nonzero at column tgt[i] with value val[i]."""
        tgt, val = [], []
        for row in m:
            nz = [(j, v) for j, v in enumerate(row) if v]
            if len(nz) != 1:
                return None
            tgt.append(nz[0][0])
            val.append(nz[0][1])
        return tuple(tgt), tuple(val)

    # -- polynomial/vector actions -------------------------------------------

    def act_on_coord_monomial(self, g: int, expt: tuple[int, ...]) -> tuple[tuple[int, ...], Cyc]:
        """Image of the coordinate monomial x^expt under g (monomial matrices only)."""
        data = self._coord_action[g]
        if data is None:
            raise NotImplementedError("only monomial matrix groups are supported")
        tgt, val = data
        out = [0] * self.dim
        factor = cyc(1)
        for i, k in enumerate(expt):
            if k:
                out[tgt[i]] += k
                factor = factor * (val[i] ** k)
        return tuple(out), factor

    def act_on_vector_monomial(self, g: int, expt: tuple[int, ...]) -> tuple[tuple[int, ...], Cyc]:
        """Image of the V-monomial y^expt under g."""
        data = self._vector_action[g]
        if data is None:
            raise NotImplementedError("only monomial matrix groups are supported")
        # g e_i = sum_j M[j][i] e_j; for monomial matrices column i has a single entry
        tgt, val = data
        # tgt/val describe rows of M; invert to columns: column i hits row r with M[r][i]
        col_tgt = [0] * self.dim
        col_val: list[Cyc] = [cyc(0)] * self.dim
        for r in range(self.dim):
            col_tgt[tgt[r]] = r
            col_val[tgt[r]] = val[r]
        out = [0] * self.dim
        factor = cyc(1)
        for i, k in enumerate(expt):
            if k:
                out[col_tgt[i]] += k
                factor = factor * (col_val[i] ** k)
        return tuple(out), factor

    def coord_matrix(self, g: int) -> Matrix:
        """Matrix of g acting on coordinates (dual space)."""
        return mat_transpose(self.elements[self.inverse[g]])

    # -- reflections ----------------------------------------------------------

    def _find_reflections(self) -> None:
        refl_by_elt: dict[int, Reflection] = {}
        label = 0
        for cls in self.conjugacy_classes:
            rep = cls[0]
            if rep == 0 or not self._is_reflection(rep):
                continue
            lam = self._nontrivial_eigenvalue_on_coords(rep)
            for g in cls:
                root, coroot = self._root_data(g)
                refl_by_elt[g] = Reflection(g, label, lam, root, coroot)
            self.classes.append(ReflectionClass(label, rep, lam, cls))
            label += 1
        self.reflections = [refl_by_elt[g] for g in sorted(refl_by_elt)]

    def _is_reflection(self, g: int) -> bool:
        m = self.elements[g]
        rows = []
        for i in range(self.dim):
            row = {j: m[i][j] - cyc(1 if i == j else 0) for j in range(self.dim)}
            rows.append({j: v for j, v in row.items() if v})
        from .linalg import rank

        return rank(rows) == 1

    def _nontrivial_eigenvalue_on_coords(self, g: int) -> Cyc:
        # trace of the coordinate action is (dim - 1) * 1 + lambda
        lam = mat_trace(self.coord_matrix(g)) - cyc(self.dim - 1)
        if lam == cyc(1) or not lam:
            raise ValueError("reflection with unit eigenvalue: corrupted data")
        return lam

    def _root_data(self, g: int) -> tuple[tuple[Cyc, ...], tuple[Cyc, ...]]:
        lam = self._nontrivial_eigenvalue_on_coords(g)
        n = self.coord_matrix(g)
        rows = []
        for i in range(self.dim):
            row = {j: n[i][j] - (lam if i == j else cyc(0)) for j in range(self.dim)}
            rows.append({j: v for j, v in row.items() if v})
        root_vecs = nullspace(rows, self.dim, cyc(1))
        if len(root_vecs) != 1:
            raise ValueError("reflection eigenline on coordinates is not 1-dimensional")
        root = tuple(root_vecs[0].get(j, cyc(0)) for j in range(self.dim))
        m = self.elements[g]
        lam_v = mat_trace(m) - cyc(self.dim - 1)
        rows = []
        for i in range(self.dim):
            row = {j: m[i][j] - (lam_v if i == j else cyc(0)) for j in range(self.dim)}
            rows.append({j: v for j, v in row.items() if v})
        co_vecs = nullspace(rows, self.dim, cyc(1))
        if len(co_vecs) != 1:
            raise ValueError("reflection eigenline on V is not 1-dimensional")
        coroot = [co_vecs[0].get(j, cyc(0)) for j in range(self.dim)]
        pairing = sum((root[j] * coroot[j] for j in range(self.dim)), cyc(0))
        if not pairing:
            raise ValueError("degenerate root/coroot pairing")
        scale = cyc(2) / pairing
        coroot = [v * scale for v in coroot]
        return root, tuple(coroot)

    def __repr__(self) -> str:
        return f"ReflectionGroup({self.name}, order={self.order}, dim={self.dim})"


def param_count(group: ReflectionGroup) -> int:
    """Number of deformation parameters c: one per reflection class.

    (For a linear space there is no 2-form contribution.)
    """
    return len(group.classes)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _closure(name: str, dim: int, generators: list[Matrix]) -> ReflectionGroup:
    elems = [mat_identity(dim)]
    seen = {elems[0]}
    frontier = [elems[0]]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                p = mat_mul(m, g)
                if p not in seen:
                    seen.add(p)
                    elems.append(p)
                    nxt.append(p)
        frontier = nxt
    group = ReflectionGroup(name, elems)
    group.generators = tuple(elems.index(g) for g in generators)
    return group


def cyclic_group(n: int) -> ReflectionGroup:
    if n < 2:
        raise ValueError("cyclic group needs n >= 2")
    gen: Matrix = ((zeta(n),),)
    return _closure(f"Z{n}", 1, [gen])


def symmetric_group(n: int) -> ReflectionGroup:
    if n < 2:
        raise ValueError("symmetric group needs n >= 2")

    def perm_matrix(p: tuple[int, ...]) -> Matrix:
        return tuple(
            tuple(cyc(1 if p[j] == i else 0) for j in range(n)) for i in range(n)
        )

    gens = []
    for k in range(n - 1):
        p = list(range(n))
        p[k], p[k + 1] = p[k + 1], p[k]
        gens.append(perm_matrix(tuple(p)))
    return _closure(f"S{n}", n, gens)


def dihedral_group(m: int) -> ReflectionGroup:
    """Dihedral group of order 2m in complex coordinates (z, zbar)."""
    if m < 2:
        raise ValueError("dihedral group needs m >= 2")
    rot: Matrix = ((zeta(m), cyc(0)), (cyc(0), zeta(m, m - 1)))
    flip: Matrix = ((cyc(0), cyc(1)), (cyc(1), cyc(0)))
    return _closure(f"I2({m})", 2, [rot, flip])


def type_b_group(n: int) -> ReflectionGroup:
    """Signed permutations of C^n."""
    if n < 2:
        raise ValueError("type B group needs n >= 2")

    def perm_matrix(p: tuple[int, ...]) -> Matrix:
        return tuple(
            tuple(cyc(1 if p[j] == i else 0) for j in range(n)) for i in range(n)
        )

    gens = []
    for k in range(n - 1):
        p = list(range(n))
        p[k], p[k + 1] = p[k + 1], p[k]
        gens.append(perm_matrix(tuple(p)))
    sign = tuple(
        tuple(cyc(-1 if i == j == n - 1 else (1 if i == j else 0)) for j in range(n))
        for i in range(n)
    )
    gens.append(sign)
    return _closure(f"B{n}", n, gens)


_KEY_RE = re.compile(r"^(?:(Z|S|B)(\d+)|I2\((\d+)\))$", re.IGNORECASE)


@lru_cache(maxsize=None)
def group_by_name(key: str) -> ReflectionGroup:
    """Catalog lookup: Z4, S3, B2, I2(5)."""
    m = _KEY_RE.match(key.strip())
    if not m:
        raise KeyError(f"unknown group key: {key!r}")
    if m.group(3):
        return dihedral_group(int(m.group(3)))
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "Z":
        return cyclic_group(n)
    if kind == "S":
        return symmetric_group(n)
    return type_b_group(n)


def build_group(kind: str, n: int) -> ReflectionGroup:
    builders = {
        "cyclic": cyclic_group,
        "symmetric": symmetric_group,
        "dihedral": dihedral_group,
        "typeB": type_b_group,
    }
    if kind not in builders:
        raise KeyError(f"unsupported group kind: {kind!r}")
    return builders[kind](n)
