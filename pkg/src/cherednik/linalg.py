"""Exact linear algebra over any field-like scalar type.

Scalars only need +, -, *, /, unary -, == and truthiness (nonzero test).
Vectors are sparse dicts column -> scalar; zero entries are never stored.
Used for eigenline extraction, centralizer nullspaces, Satake rank
comparisons, tau-map inversion, and Hecke rank counts.
"""

from __future__ import annotations

from typing import Iterable, TypeVar

S = TypeVar("S")

Vec = dict[int, S]


def vec_sub_scaled(target: Vec, factor: S, source: Vec) -> None:
    """target -= factor * source, in place, dropping zeros."""
    for col, val in source.items():
        cur = target.get(col)
        new = (cur - factor * val) if cur is not None else -(factor * val)
        if new:
            target[col] = new
        else:
            target.pop(col, None)


class Echelon:
    """Incremental reduced row echelon accumulator."""

    def __init__(self) -> None:
        self.rows: dict[int, Vec] = {}  # pivot column -> normalized row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec) -> Vec:
        """Residual of vec after elimination against stored pivots."""
        vec = dict(vec)
        while vec:
            lead = min(vec)
            row = self.rows.get(lead)
            if row is None:
                return vec
            vec_sub_scaled(vec, vec[lead], row)
        return vec

    def add(self, vec: Vec) -> bool:
        """Insert vec; returns True when it increased the rank."""
        res = self.reduce(vec)
        if not res:
            return False
        lead = min(res)
        inv = res[lead]
        row = {c: v / inv for c, v in res.items()}
        # keep full reduction so membership tests stay canonical
        for pcol, prow in self.rows.items():
            if lead in prow:
                vec_sub_scaled(prow, prow[lead], row)
        self.rows[lead] = row
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable[Vec]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def nullspace(rows: Iterable[Vec], ncols: int, one: S) -> list[Vec]:
    """Basis of the right kernel of the matrix whose rows are given.

    `one` is the multiplicative unit of the scalar field, used to seed
    free-variable basis vectors.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    pivot_cols = set(ech.rows.keys())
    basis: list[Vec] = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec: Vec = {free: one}
        for pcol, prow in ech.rows.items():
            coeff = prow.get(free)
            if coeff:
                vec[pcol] = -coeff
        basis.append(vec)
    return basis


def solve(rows: list[Vec], rhs: list[S], ncols: int) -> Vec | None:
    """One solution of the sparse system rows @ x = rhs, or None.

    rhs entries must be scalars of the same field; zero entries may be
    falsy scalars.
    """
    ech = Echelon()
    augmented = []
    for row, b in zip(rows, rhs):
        v = dict(row)
        if b:
            v[ncols] = b
        augmented.append(v)
    for v in augmented:
        ech.add(v)
    if ncols in ech.rows:
        return None  # inconsistent: pivot in the augmented column
    sol: Vec = {}
    for pcol, prow in ech.rows.items():
        val = prow.get(ncols)
        if val:
            # row is x_pcol + sum(free terms) = val with frees set to zero
            sol[pcol] = val
    return sol


def first_kernel_vector(rows: Iterable[Vec], ncols: int, one: S) -> Vec:
    basis = nullspace(rows, ncols, one)
    if not basis:
        raise ValueError("matrix has trivial kernel")
    return basis[0]
