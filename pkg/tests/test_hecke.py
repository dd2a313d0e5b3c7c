import pytest

from cherednik.cyclotomic import cyc
from cherednik.hecke import (
    BadOrbifoldError,
    CosetOverflow,
    GroupPresentation,
    OrbifoldSignature,
    a2_hecke,
    cyclic_hecke,
    hecke_dimension,
    hecke_rank,
    orbifold_group_order,
    orbifold_presentation,
    signature_hecke,
    signature_verdict,
    specialization_matches_orbifold,
    specialize_tau_zero,
    sphere_obstruction,
    todd_coxeter,
)


class TestSignature:
    def test_parse(self):
        sig = OrbifoldSignature.parse("g=0;2,3,5")
        assert sig.genus == 0 and sig.cone_orders == (2, 3, 5)
        torus = OrbifoldSignature.parse("g=1;")
        assert torus.genus == 1 and torus.cone_orders == ()

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            OrbifoldSignature.parse("2,3,5")
        with pytest.raises(ValueError):
            OrbifoldSignature(0, (1, 2))

    def test_curvature_classes(self):
        assert OrbifoldSignature(0, (2, 3, 5)).curvature_class() == "spherical"
        assert OrbifoldSignature(0, (2, 3, 6)).curvature_class() == "euclidean"
        assert OrbifoldSignature(0, (2, 3, 7)).curvature_class() == "hyperbolic"
        assert OrbifoldSignature(0, (2, 2, 2, 2)).curvature_class() == "euclidean"
        assert OrbifoldSignature(1, ()).curvature_class() == "euclidean"
        assert OrbifoldSignature(2, ()).curvature_class() == "hyperbolic"


class TestPresentation:
    def test_triangle(self):
        pres = orbifold_presentation(OrbifoldSignature(0, (2, 3, 3)))
        assert pres.generators == ("c1", "c2", "c3")
        assert len(pres.relators) == 4
        assert pres.relators[0] == (0, 0)
        assert pres.relators[-1] == (0, 2, 4)  # c1 c2 c3

    def test_torus(self):
        pres = orbifold_presentation(OrbifoldSignature(1, ()))
        assert pres.generators == ("a1", "b1")
        assert len(pres.relators) == 1

    def test_single_cone_point_trivial_group(self):
        assert orbifold_group_order(OrbifoldSignature(0, (7,))) == 1

    def test_two_cones_cyclic(self):
        assert orbifold_group_order(OrbifoldSignature(0, (4, 4))) == 4
        assert orbifold_group_order(OrbifoldSignature(0, (2, 4))) == 2


class TestToddCoxeter:
    @pytest.mark.parametrize(
        "orders,size",
        [((2, 3, 3), 12), ((2, 3, 4), 24), ((2, 3, 5), 60), ((2, 2, 2), 4), ((2, 2, 6), 12)],
    )
    def test_orders(self, orders, size):
        pres = orbifold_presentation(OrbifoldSignature(0, orders))
        rep = todd_coxeter(pres, 10_000)
        assert rep.degree == size
        assert rep.relators_trivial(pres.relators)

    def test_dihedral_family(self):
        for n in range(2, 8):
            assert orbifold_group_order(OrbifoldSignature(0, (2, 2, n))) == 2 * n

    def test_overflow_hyperbolic(self):
        pres = orbifold_presentation(OrbifoldSignature(0, (2, 3, 7)))
        with pytest.raises(CosetOverflow):
            todd_coxeter(pres, 10_000)

    def test_coxeter_style_presentation(self):
        # an independent A2 check: < s1, s2 | s1^2, s2^2, (s1 s2)^3 > has order 6
        pres = GroupPresentation(("s1", "s2"), ((0, 0), (2, 2), (0, 2, 0, 2, 0, 2)))
        assert todd_coxeter(pres, 1000).degree == 6

    def test_deterministic(self):
        pres = orbifold_presentation(OrbifoldSignature(0, (2, 3, 4)))
        a = todd_coxeter(pres, 10_000)
        b = todd_coxeter(pres, 10_000)
        assert a.perms == b.perms


class TestObstruction:
    def test_233(self):
        rep = sphere_obstruction(OrbifoldSignature(0, (2, 3, 3)))
        assert rep["group_order"] == 12
        assert rep["coefficients"] == [6, 6, 4, 4, 4, 4, 4, 4]
        assert rep["epsilon"] == 1 and rep["epsilon_consistent"]

    def test_235(self):
        rep = sphere_obstruction(OrbifoldSignature(0, (2, 3, 5)))
        assert rep["coefficients"] == [30, 30, 20, 20, 20, 12, 12, 12, 12, 12]
        assert rep["epsilon"] == 1

    def test_222(self):
        rep = sphere_obstruction(OrbifoldSignature(0, (2, 2, 2)))
        assert rep["group_order"] == 4
        assert rep["coefficients"] == [2, 2, 2, 2, 2, 2]
        assert rep["epsilon"] == 1

    def test_nonzero_for_spherical_family(self):
        for orders in [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 3, 3), (2, 3, 4), (2, 3, 5), (3, 3), (5, 5)]:
            rep = sphere_obstruction(OrbifoldSignature(0, orders))
            assert rep["nonzero"] and rep["epsilon"] == 1, orders

    def test_rejects_nonspherical(self):
        with pytest.raises(ValueError):
            sphere_obstruction(OrbifoldSignature(0, (2, 3, 7)))

    def test_rejects_trivial_group(self):
        with pytest.raises(ValueError):
            sphere_obstruction(OrbifoldSignature(0, (5,)))

    def test_rejects_bad_orbifold(self):
        # the (2,4) teardrop-like quotient collapses c2 to order 2
        with pytest.raises(BadOrbifoldError):
            sphere_obstruction(OrbifoldSignature(0, (2, 4)))


class TestVerdicts:
    def test_expected_not_flat(self):
        rep = signature_verdict(OrbifoldSignature(0, (2, 3, 5)))
        assert rep["verdict"] == "expected-not-flat"
        assert rep["group_order"] == 60

    def test_expected_flat_hyperbolic(self):
        rep = signature_verdict(OrbifoldSignature(0, (2, 3, 7)))
        assert rep["verdict"] == "expected-flat"
        assert rep["curvature"] == "hyperbolic"

    def test_expected_flat_euclidean(self):
        rep = signature_verdict(OrbifoldSignature(0, (2, 2, 2, 2)))
        assert rep["verdict"] == "expected-flat"
        assert rep["curvature"] == "euclidean"

    def test_trivial_spherical_group(self):
        rep = signature_verdict(OrbifoldSignature(0, (3,)))
        assert rep["verdict"] == "expected-flat" and rep["group_order"] == 1


class TestHeckeDimensions:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_cyclic_rank(self, n):
        rep = hecke_dimension(cyclic_hecke(n), n - 1)
        assert rep["passed"] and rep["rank"] == n and rep["free"]

    def test_cyclic_rank_matches_group_order(self):
        # independent route: the tau = 0 algebra is the cyclic group algebra
        n = 4
        assert orbifold_group_order(OrbifoldSignature(0, (n, n))) == n
        assert hecke_dimension(cyclic_hecke(n), n - 1)["rank"] == n

    def test_a2_rank_six(self):
        rep = hecke_dimension(a2_hecke(), 3)
        assert rep["passed"] and rep["rank"] == 6 and rep["free"]

    def test_a2_matches_coxeter_order(self):
        pres = GroupPresentation(("s1", "s2"), ((0, 0), (2, 2), (0, 2, 0, 2, 0, 2)))
        assert todd_coxeter(pres, 1000).degree == 6

    def test_rank_reported_per_cap(self):
        rep = hecke_rank(cyclic_hecke(3), 4)
        assert rep["rank"] == 3 and rep["free"]
        assert rep["ring_dimension"] == 4  # 1 + three tau variables at order 2


class TestTauZeroSpecialization:
    def test_cyclic_power_relation(self):
        for n in (2, 3, 5):
            rep = specialize_tau_zero(cyclic_hecke(n))
            assert rep["passed"]
            coeffs = rep["relations"][0]["coefficients"]
            assert coeffs[0] == str(cyc(-1)) and coeffs[-1] == str(cyc(1))
            assert all(c == "0" for c in coeffs[1:-1])

    def test_signature_presentation_including_group(self):
        sig = OrbifoldSignature(0, (2, 3, 3))
        rep = specialize_tau_zero(signature_hecke(sig))
        assert rep["passed"]
        # the tau = 0 algebra is the group algebra: dimension 12 over C
        assert orbifold_group_order(sig) == 12

    def test_a2_quadratic_becomes_involution(self):
        rep = specialize_tau_zero(a2_hecke())
        assert rep["passed"]
        for rel in rep["relations"]:
            assert rel["order"] == 2
        # the specialized presentation generates the order-6 reflection group,
        # matching the rank of the deformation
        assert todd_coxeter(rep["presentation"], 1000).degree == 6

    def test_presentation_equality_across_signatures(self):
        for text in ("g=0;2,3,3", "g=0;2,2,5", "g=0;5,5", "g=1;", "g=1;3", "g=2;2,2"):
            assert specialization_matches_orbifold(OrbifoldSignature.parse(text)), text

    def test_genus_one_no_cones(self):
        spec = specialize_tau_zero(signature_hecke(OrbifoldSignature(1, ())))
        assert spec["passed"] and spec["relations"] == []
        assert spec["presentation"].generators == ("a1", "b1")

    def test_second_order_truncation_still_free(self):
        # flatness at truncation order 3 for the cyclic catalog
        rep = hecke_dimension(cyclic_hecke(2, order=3), 1)
        assert rep["passed"] and rep["rank"] == 2 and rep["free"]
        rep = hecke_dimension(cyclic_hecke(3, order=3), 2)
        assert rep["passed"] and rep["rank"] == 3 and rep["free"]
