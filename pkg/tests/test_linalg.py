from fractions import Fraction

from cherednik.cyclotomic import cyc, zeta
from cherednik.linalg import Echelon, nullspace, rank, solve


def F(v):
    return Fraction(v)


def test_rank_over_fractions():
    rows = [{0: F(1), 1: F(2)}, {0: F(2), 1: F(4)}, {1: F(1)}]
    assert rank(rows) == 2


def test_echelon_membership():
    ech = Echelon()
    ech.add({0: F(1), 1: F(1)})
    ech.add({1: F(1), 2: F(1)})
    assert ech.contains({0: F(2), 1: F(1), 2: F(-1)})  # 2*(r1) - (r2) ... check
    assert not ech.contains({2: F(1)})


def test_nullspace_dimension():
    rows = [{0: F(1), 1: F(1), 2: F(1)}]
    basis = nullspace(rows, 3, F(1))
    assert len(basis) == 2
    for vec in basis:
        total = sum((vec.get(i, F(0)) for i in range(3)), F(0))
        assert total == 0


def test_solve_consistent():
    rows = [{0: F(2), 1: F(1)}, {1: F(3)}]
    sol = solve(rows, [F(5), F(6)], 2)
    assert sol is not None
    x0, x1 = sol.get(0, F(0)), sol.get(1, F(0))
    assert 2 * x0 + x1 == 5 and 3 * x1 == 6


def test_solve_inconsistent():
    rows = [{0: F(1)}, {0: F(1)}]
    assert solve(rows, [F(1), F(2)], 1) is None


def test_over_cyclotomic_scalars():
    i = zeta(4)
    rows = [{0: i, 1: cyc(1)}, {0: cyc(1), 1: -i}]
    # second row is -i times the first: rank 1
    assert rank(rows) == 1
    basis = nullspace(rows, 2, cyc(1))
    assert len(basis) == 1
    vec = basis[0]
    assert i * vec.get(0, cyc(0)) + vec.get(1, cyc(0)) == cyc(0)
