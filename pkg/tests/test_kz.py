import cmath
import random
from fractions import Fraction

import numpy as np
import pytest

from cherednik.cyclotomic import cyc
from cherednik.kz import (
    LocalModel,
    c_eta_from_tau,
    hecke_root_check,
    monodromy_exact,
    monodromy_numeric,
    tau_from_c_eta,
    tau_roundtrip_exact,
    zeta_character,
)


class TestFlatExponent:
    def test_n2_values(self):
        model = LocalModel(2)
        assert model.flat_exponent(0) == model.eta
        assert model.flat_exponent(1) == model.c[0] * 2 + model.eta

    def test_zero_parameters(self):
        for n in (2, 3, 5):
            model = LocalModel(n)
            sub = model.substitution([0] * (n - 1), 0)
            for j in range(n):
                assert model.flat_exponent(j).substitute(sub) == cyc(0)
                assert model.zeta_exponent(j).substitute(sub) == cyc(Fraction(j, n))

    def test_index_wraps_mod_n(self):
        model = LocalModel(3)
        assert model.flat_exponent(3) == model.flat_exponent(0)

    def test_rejects_rank_below_two(self):
        with pytest.raises(ValueError):
            LocalModel(1)


class TestZetaCharacter:
    def test_n2_deformed(self):
        val = zeta_character(LocalModel(2), 1, [Fraction(1, 10)], 0)
        assert abs(val - cmath.exp(0.8j * cmath.pi)) < 1e-14

    def test_n2_undeformed_signs(self):
        model = LocalModel(2)
        assert abs(zeta_character(model, 0, [0], 0) - 1) < 1e-15
        assert abs(zeta_character(model, 1, [0], 0) + 1) < 1e-15

    def test_n3_eta_only(self):
        val = zeta_character(LocalModel(3), 0, [0, 0], Fraction(3, 10))
        assert abs(val - cmath.exp(-0.2j * cmath.pi)) < 1e-14


class TestTau:
    def test_n2_closed_form(self):
        model = LocalModel(2)
        tau = tau_from_c_eta(model)
        # tau_1 = -pi i (2c + eta), tau_2 = -pi i eta; stored as 2*pi*i coefficients
        assert tau.u[0] == -(model.c[0] * 2 + model.eta) / model.ring.const(2)
        assert tau.u[1] == -model.eta / model.ring.const(2)

    def test_all_zero(self):
        tau = tau_from_c_eta(LocalModel(4))
        assert all(v == cyc(0) for v in tau.numeric([0, 0, 0], 0))

    def test_linearity(self):
        model = LocalModel(3)
        tau = tau_from_c_eta(model)
        a = tau.numeric([Fraction(1, 7), Fraction(2, 7)], Fraction(1, 5))
        b = tau.numeric([Fraction(1, 3), Fraction(-1, 4)], Fraction(2, 9))
        both = tau.numeric(
            [Fraction(1, 7) + Fraction(1, 3), Fraction(2, 7) + Fraction(-1, 4)],
            Fraction(1, 5) + Fraction(2, 9),
        )
        assert all(x + y == z for x, y, z in zip(a, b, both))

    @pytest.mark.parametrize("n", range(2, 9))
    def test_roundtrip_exact(self, n):
        model = LocalModel(n)
        cs = [Fraction(k + 1, 2 * n + 5) for k in range(n - 1)]
        assert tau_roundtrip_exact(model, cs, Fraction(-2, 13))

    def test_n8_numeric_with_large_conductor(self):
        model = LocalModel(8)
        cs = [Fraction(k + 1, 53) for k in range(7)]
        res = monodromy_numeric(model, cs, Fraction(2, 19), steps=2048)
        assert res.max_deviation < 1e-8

    def test_equal_c_roundtrip(self):
        model = LocalModel(3)
        tau = tau_from_c_eta(model)
        u = tau.numeric([Fraction(1, 6), Fraction(1, 6)], Fraction(1, 4))
        rec = c_eta_from_tau(model, u)
        assert rec["c1"] == cyc(Fraction(1, 6))
        assert rec["c2"] == cyc(Fraction(1, 6))
        assert rec["eta"] == cyc(Fraction(1, 4))


class TestMonodromyExact:
    def test_n2_values(self):
        res = monodromy_exact(LocalModel(2), [Fraction(1, 10)], 0)
        got = sorted(res.eigenvalues, key=lambda z: z.real)
        want = sorted([1 + 0j, cmath.exp(0.8j * cmath.pi)], key=lambda z: z.real)
        assert all(abs(a - b) < 1e-14 for a, b in zip(got, want))
        assert not res.resonant

    def test_zero_parameters_roots_of_unity(self):
        for n in (2, 3, 4, 6):
            res = monodromy_exact(LocalModel(n), [0] * (n - 1), 0)
            for j, val in enumerate(res.eigenvalues):
                assert abs(val - cmath.exp(2j * cmath.pi * j / n)) < 1e-14
            for val in res.eigenvalues:
                assert abs(val**n - 1) < 1e-12

    def test_matches_characters(self):
        model = LocalModel(3)
        cs = [Fraction(1, 9), Fraction(-1, 11)]
        eta = Fraction(1, 7)
        res = monodromy_exact(model, cs, eta)
        for j in range(3):
            assert abs(res.eigenvalues[j] - zeta_character(model, j, cs, eta)) < 1e-13

    def test_resonance_flagged_with_listing(self):
        res = monodromy_exact(LocalModel(2), [Fraction(1, 2)], 0)
        assert res.resonant
        assert len(res.eigenvalues) == 2  # listing still returned


class TestMonodromyNumeric:
    def test_n2_within_tolerance(self):
        res = monodromy_numeric(LocalModel(2), [Fraction(1, 10)], 0, steps=4096)
        assert res.max_deviation < 1e-8

    def test_zero_parameters(self):
        res = monodromy_numeric(LocalModel(3), [0, 0], 0, steps=1024)
        assert res.max_deviation < 1e-10

    def test_n4_generic(self):
        res = monodromy_numeric(
            LocalModel(4), [Fraction(1, 13), Fraction(-1, 9), Fraction(1, 7)], Fraction(1, 5), steps=4096
        )
        assert len(res.eigenvalues) == 4
        assert res.max_deviation < 1e-8

    def test_fourth_order_convergence(self):
        model = LocalModel(2)
        coarse = monodromy_numeric(model, [Fraction(1, 4)], Fraction(1, 5), steps=32).max_deviation
        fine = monodromy_numeric(model, [Fraction(1, 4)], Fraction(1, 5), steps=64).max_deviation
        assert 8 < coarse / fine < 32

    def test_too_few_steps_reported_not_silent(self):
        model = LocalModel(3)
        res = monodromy_numeric(model, [Fraction(2, 5), Fraction(1, 3)], Fraction(2, 5), steps=4)
        assert res.max_deviation > 1e-10  # caller sees the tolerance failure

    def test_minimum_steps_guard(self):
        with pytest.raises(ValueError):
            monodromy_numeric(LocalModel(2), [0], 0, steps=2)


class TestRootCorrespondence:
    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_symbolic(self, n):
        rep = hecke_root_check(LocalModel(n))
        assert rep["passed"], rep

    def test_numeric_multisets_agree(self):
        rng = random.Random(71)
        for n in (2, 3, 4):
            model = LocalModel(n)
            tau = tau_from_c_eta(model)
            cs = [Fraction(rng.randint(-10, 10), 97) for _ in range(n - 1)]
            eta = Fraction(rng.randint(-10, 10), 89)
            taus = tau.numeric_complex(cs, eta)
            roots = sorted(
                (cmath.exp(2j * cmath.pi * j / n) * cmath.exp(taus[j - 1]) for j in range(1, n + 1)),
                key=lambda z: (round(z.real, 9), round(z.imag, 9)),
            )
            chars = sorted(
                (zeta_character(model, j, cs, eta) for j in range(n)),
                key=lambda z: (round(z.real, 9), round(z.imag, 9)),
            )
            assert all(abs(a - b) < 1e-12 for a, b in zip(roots, chars))

    def test_monodromy_satisfies_local_polynomial(self):
        # prod_j (T - root_j) annihilates the numeric monodromy matrix
        n = 3
        model = LocalModel(n)
        cs = [Fraction(1, 8), Fraction(-1, 10)]
        eta = Fraction(1, 6)
        taus = tau_from_c_eta(model).numeric_complex(cs, eta)
        exact = monodromy_exact(model, cs, eta)
        T = np.diag(np.array(exact.eigenvalues, dtype=complex))
        acc = np.eye(n, dtype=complex)
        for j in range(1, n + 1):
            root = cmath.exp(2j * cmath.pi * j / n) * cmath.exp(taus[j - 1])
            acc = acc @ (T - root * np.eye(n))
        assert np.max(np.abs(acc)) < 1e-8
