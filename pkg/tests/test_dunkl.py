import copy
import dataclasses
import random
from fractions import Fraction

import pytest

from cherednik.cyclotomic import cyc
from cherednik.dunkl import (
    DunklOperator,
    InconsistentReflectionData,
    QuasiInvariantSpec,
    class_parameters,
    dunkl_commute_check,
    make_param_ring,
    monomials_up_to,
    quasi_basis,
    quasi_hilbert_series,
    quasi_invariance_check,
    radial_restriction,
    radial_t_scaling_note,
)
from cherednik.groups import group_by_name
from cherednik.polys import ParamRing, Poly


def _z2_setup():
    g = group_by_name("Z2")
    ring = make_param_ring(g)
    return g, ring, ring.var("t"), class_parameters(g, ring)


# -- independent oracle for the order-2 rank-1 case --------------------------
# D(x^k) = t k x^(k-1) + c ((-x)^k - x^k)/x, computed on raw coefficient dicts


def _z2_oracle_apply(poly, ring):
    t, c = ring.var("t"), ring.var("c0")
    out = {}

    def add(k, v):
        cur = out.get(k, ring.zero)
        new = cur + v
        if new:
            out[k] = new
        elif k in out:
            del out[k]

    for k, coeff in poly.items():
        if k >= 1:
            add(k - 1, coeff * t * k)
        sign = -2 if k % 2 == 1 else 0
        if sign:
            add(k - 1, coeff * c * sign)
    return out


def test_z2_against_independent_oracle():
    g, ring, t, c = _z2_setup()
    op = DunklOperator.basis(g, 0, t, c)
    rng = random.Random(23)
    for _ in range(20):
        coeffs = {k: ring.const(rng.randint(-3, 3)) for k in range(7)}
        coeffs = {k: v for k, v in coeffs.items() if v}
        p = Poly(1, {(k,): v for k, v in coeffs.items()})
        expected = _z2_oracle_apply(coeffs, ring)
        got = op.apply(p)
        assert got == Poly(1, {(k,): v for k, v in expected.items()})


def test_z2_examples():
    g, ring, t, c = _z2_setup()
    op = DunklOperator.basis(g, 0, t, c)
    assert op.apply(Poly.monomial(1, (1,), ring.one)) == Poly.constant(1, t - c[0] * 2)
    assert op.apply(Poly.monomial(1, (2,), ring.one)) == Poly.monomial(1, (1,), t * 2)
    assert op.apply(Poly.constant(1, ring.one)).is_zero()


def test_constants_killed_every_group():
    for key in ("Z3", "S3", "B2", "I2(4)"):
        g = group_by_name(key)
        ring = make_param_ring(g)
        op = DunklOperator.basis(g, 0, ring.var("t"), class_parameters(g, ring))
        assert op.apply(Poly.constant(g.dim, ring.one)).is_zero()


@pytest.mark.parametrize("key,deg", [("S3", 4), ("Z4", 6), ("I2(3)", 4), ("B2", 5)])
def test_commutativity(key, deg):
    rep = dunkl_commute_check(group_by_name(key), deg)
    assert rep["passed"], rep


def test_commutativity_rank1_vacuous():
    rep = dunkl_commute_check(group_by_name("Z5"), 6)
    assert rep["passed"] and rep["checked"] == 0


def test_commutativity_cyclotomic_coefficients():
    # odd and even dihedral cases exercise genuine root-of-unity arithmetic
    for key in ("I2(5)", "I2(6)"):
        rep = dunkl_commute_check(group_by_name(key), 3)
        assert rep["passed"], rep


def test_commutativity_beyond_acceptance_scale():
    assert dunkl_commute_check(group_by_name("S4"), 3)["passed"]
    assert dunkl_commute_check(group_by_name("B3"), 2)["passed"]


def test_leibniz_on_invariants():
    # for invariant f: D(f p) - f D(p) = t (df/dy) p, reflection terms cancel
    g, ring, t, c = _z2_setup()
    op = DunklOperator.basis(g, 0, t, c)
    rng = random.Random(31)
    f = Poly.monomial(1, (2,), ring.one) + Poly.constant(1, ring.const(3))  # invariant
    for _ in range(10):
        p = Poly(1, {(k,): ring.const(rng.randint(-2, 2)) for k in range(6)})
        lhs = op.apply(f * p) - f * op.apply(p)
        df = f.derivative(0)
        rhs = Poly(1, {e: coeff * t for e, coeff in (df * p).terms.items()})
        assert lhs == rhs


def test_leibniz_on_symmetric_invariants_s3():
    g = group_by_name("S3")
    ring = make_param_ring(g)
    t, c = ring.var("t"), class_parameters(g, ring)
    op = DunklOperator.basis(g, 1, t, c)
    e1 = sum(
        (Poly.variable(3, i, ring.one) for i in range(3)),
        Poly(3),
    )
    rng = random.Random(37)
    for _ in range(5):
        p = Poly(3, {tuple(rng.randint(0, 2) for _ in range(3)): ring.const(rng.randint(-2, 2))})
        lhs = op.apply(e1 * p) - e1 * op.apply(p)
        rhs = Poly(3, {e: coeff * t for e, coeff in (e1.derivative(1) * p).terms.items()})
        assert lhs == rhs


def test_commutator_with_x_matches_relation():
    # [D_y, x_j] acting on monomials equals t (y, x_j) - sum_s c_s (y,a_s)(x_j,a_s^vee) s
    for key in ("Z2", "Z3", "B2"):
        g = group_by_name(key)
        ring = make_param_ring(g)
        t, c = ring.var("t"), class_parameters(g, ring)
        from cherednik.dunkl import act_on_poly

        for i in range(g.dim):
            op = DunklOperator.basis(g, i, t, c)
            for j in range(g.dim):
                xj = Poly.variable(g.dim, j, ring.one)
                for expt in monomials_up_to(g.dim, 3):
                    p = Poly.monomial(g.dim, expt, ring.one)
                    lhs = op.apply(xj * p) - xj * op.apply(p)
                    rhs = Poly(g.dim)
                    if i == j:
                        rhs = rhs + Poly(g.dim, {e: v * t for e, v in p.terms.items()})
                    for refl in g.reflections:
                        pair = refl.root[i] * refl.coroot[j]
                        if not pair:
                            continue
                        coeff = -(c[refl.class_label] * ring.const(pair))
                        moved = act_on_poly(g, refl.element, p)
                        rhs = rhs + Poly(g.dim, {e: v * coeff for e, v in moved.terms.items()})
                    assert lhs == rhs


def test_corrupted_root_raises_inconsistency():
    # a root that does not vanish on the mirror breaks exact divisibility
    g = copy.copy(group_by_name("B2"))
    bad = []
    for r in g.reflections:
        if sum(1 for a in r.root if a) == 2:  # a swap-type reflection
            bad.append(dataclasses.replace(r, root=(cyc(1), cyc(0))))
        else:
            bad.append(r)
    g.reflections = bad
    ring = make_param_ring(g)
    op = DunklOperator.basis(g, 0, ring.var("t"), class_parameters(g, ring))
    # x1 moves to +-x2 under a swap, so (s - 1)x1 is not divisible by x1
    with pytest.raises(InconsistentReflectionData):
        op.apply(Poly.monomial(2, (1, 0), ring.one))


def test_root_scale_invariance():
    g = group_by_name("B2")
    ring = make_param_ring(g)
    t, c = ring.var("t"), class_parameters(g, ring)
    base = DunklOperator.basis(g, 0, t, c)
    scaled_group = copy.copy(group_by_name("B2"))
    mu = cyc(Fraction(5, 3))
    scaled_group.reflections = [
        dataclasses.replace(
            r,
            root=tuple(a * mu for a in r.root),
            coroot=tuple(b / mu for b in r.coroot),
        )
        for r in scaled_group.reflections
    ]
    scaled = DunklOperator.basis(scaled_group, 0, t, c)
    for expt in monomials_up_to(2, 4):
        p = Poly.monomial(2, expt, ring.one)
        assert base.apply(p) == scaled.apply(p)


class TestRadial:
    def test_examples_at_c1(self):
        op = radial_restriction(Fraction(1))
        assert op.apply({3: Fraction(1)}) == {}
        assert op.apply({5: Fraction(1)}) == {3: Fraction(10)}
        assert op.apply({2: Fraction(1)}) == {0: Fraction(-2)}

    def test_formal_c(self):
        ring = ParamRing(("c",))
        op = radial_restriction(ring.var("c"))
        exponent, coeff = op.apply_power(3)
        assert exponent == 1
        assert coeff == ring.const(6) - ring.var("c") * 6


class TestQuasi:
    def test_basis_examples(self):
        assert quasi_basis(QuasiInvariantSpec(1, 5)) == [0, 2, 3, 4, 5]
        assert quasi_basis(QuasiInvariantSpec(0, 3)) == [0, 1, 2, 3]
        assert quasi_basis(QuasiInvariantSpec(2, 4)) == [0, 2, 4]

    def test_invariance_and_witness(self):
        for m in (0, 1, 2, 3):
            rep = quasi_invariance_check(QuasiInvariantSpec(m, 12))
            assert rep["passed"], rep
            if m > 0:
                wit = rep["generic_c_failure"]
                assert wit["fails_for_generic_c"]
                assert wit["image_power"] == 2 * m - 1

    def test_sample_witness_value(self):
        # at m=1, c=1/2: L(x^3) = 3 x, nonzero and outside the closure
        op = radial_restriction(Fraction(1, 2))
        assert op.apply({3: Fraction(1)}) == {1: Fraction(3)}

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(ValueError):
            QuasiInvariantSpec(-1, 4)

    def test_hilbert_series(self):
        h0 = quasi_hilbert_series(QuasiInvariantSpec(0, 8))
        assert h0["numerator"] == [1] and h0["denominator"] == "1 - q"
        h1 = quasi_hilbert_series(QuasiInvariantSpec(1, 8))
        assert h1["numerator"] == [1, 0, 0, 1] and h1["denominator"] == "1 - q^2"
        h2 = quasi_hilbert_series(QuasiInvariantSpec(2, 8))
        assert h2["numerator"] == [1, 0, 0, 0, 0, 1]
        for h in (h0, h1, h2):
            assert h["palindromic"] and h["dimension_match"]

    def test_formal_t_scaling_observation(self):
        for m in range(4):
            assert radial_t_scaling_note(m)
