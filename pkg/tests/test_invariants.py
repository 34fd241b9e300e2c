from fractions import Fraction

import pytest

from esymfano.fields import QQ, FieldError, PrimeField
from esymfano.invariants import (
    GroupAction,
    NotInvariantSet,
    PermutationAction,
    check_equivariance,
    close_group,
    derive_permutation_rep,
    generation_check,
    invariant_dim,
    is_invariant,
    orbit_chern,
    orbit_of_form,
    pullback_symmetric,
    reynolds,
    subalgebra_graded_dims,
    z2_counterexample_report,
)
from esymfano.poly import LinearForm, Polynomial, elem_sym

from conftest import qm


def sign_group():
    return close_group([qm([[-1, 0], [0, -1]])], QQ)


def swap_group():
    return close_group([qm([[0, 1], [1, 0]])], QQ)


def s3_group():
    return close_group(
        [qm([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), qm([[0, 0, 1], [1, 0, 0], [0, 1, 0]])],
        QQ,
    )


def lf(*coeffs):
    return LinearForm(QQ, tuple(Fraction(c) for c in coeffs))


X = Polynomial.variable(QQ, 2, 0)
Y = Polynomial.variable(QQ, 2, 1)


class TestCloseGroup:
    def test_sign_group(self):
        g = sign_group()
        assert g.order == 2

    def test_swap(self):
        assert swap_group().order == 2

    def test_rotation_order_4(self):
        g = close_group([qm([[0, -1], [1, 0]])], QQ)
        assert g.order == 4

    def test_non_invertible_rejected(self):
        with pytest.raises(ValueError):
            close_group([qm([[1, 0], [2, 0]])], QQ)

    def test_closure_validated_at_construction(self):
        with pytest.raises(ValueError):
            GroupAction(QQ, 2, (qm([[1, 0], [0, 1]]), qm([[2, 0], [0, 1]])))


class TestEquivariance:
    def test_identity_intertwines_swap(self):
        g = swap_group()
        rho = derive_permutation_rep(qm([[1, 0], [0, 1]]), g)
        assert check_equivariance(qm([[1, 0], [0, 1]]), g, rho)

    def test_diagonal_breaks_swap(self):
        g = swap_group()
        rho = derive_permutation_rep(qm([[1, 0], [0, 1]]), g)
        assert not check_equivariance(qm([[1, 0], [0, 2]]), g, rho)

    def test_sign_pair_rows(self):
        g = sign_group()
        U = qm([[1, 0], [-1, 0]])
        rho = derive_permutation_rep(U, g)
        assert check_equivariance(U, g, rho)
        # the nontrivial element swaps the two rows
        nontrivial = [p for p in rho.images if p != (0, 1)]
        assert nontrivial == [(1, 0)]

    def test_not_invariant_set(self):
        g = sign_group()
        with pytest.raises(NotInvariantSet):
            derive_permutation_rep(qm([[1, 0], [0, 2]]), g)

    def test_homomorphism_enforced(self):
        g = swap_group()
        # sending the identity element to the transposition is no homomorphism
        with pytest.raises(ValueError):
            PermutationAction(g, 2, ((1, 0), (1, 0)))

    def test_derived_rep_always_equivariant(self, rng):
        for _ in range(20):
            g = s3_group()
            U = qm([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
            rho = derive_permutation_rep(U, g)
            assert check_equivariance(U, g, rho)


class TestOrbits:
    def test_sign_orbit(self):
        orb = orbit_of_form(lf(1, 0), sign_group())
        assert {o.coeffs for o in orb} == {(1, 0), (-1, 0)}

    def test_swap_orbit(self):
        orb = orbit_of_form(lf(1, 0), swap_group())
        assert {o.coeffs for o in orb} == {(1, 0), (0, 1)}

    def test_fixed_form(self):
        orb = orbit_of_form(lf(1, 1), swap_group())
        assert len(orb) == 1

    def test_orbit_size_divides_order(self, rng):
        g = s3_group()
        for _ in range(20):
            f = lf(*(rng.randint(-3, 3) for _ in range(3)))
            assert g.order % len(orbit_of_form(f, g)) == 0


class TestOrbitChern:
    def test_sign_pair(self):
        orb = [lf(1, 0), lf(-1, 0)]
        assert orbit_chern(orb, 2) == -(X * X)

    def test_e1_of_coordinates(self):
        orb = [LinearForm(QQ, tuple(Fraction(1 if i == j else 0) for i in range(3))) for j in range(3)]
        out = orbit_chern(orb, 1)
        expect = Polynomial(QQ, 3, {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(1), (0, 0, 1): Fraction(1)})
        assert out == expect

    def test_plus_minus_pair(self):
        assert orbit_chern([lf(1, 1), lf(1, -1)], 2) == X * X - Y * Y

    def test_always_invariant_random(self, rng):
        groups = [sign_group(), swap_group(), s3_group(), close_group([qm([[0, -1], [1, 0]])], QQ)]
        for _ in range(100):
            g = groups[rng.randrange(len(groups))]
            f = lf(*(rng.randint(-3, 3) for _ in range(g.dimension)))
            orb = orbit_of_form(f, g)
            r = rng.randint(1, len(orb))
            assert is_invariant(orbit_chern(orb, r), g)


class TestReynolds:
    def test_fixes_invariant(self):
        g = sign_group()
        assert reynolds(X * X, g) == X * X

    def test_kills_odd(self):
        assert reynolds(X, sign_group()).is_zero()

    def test_symmetrizes(self):
        out = reynolds(X * X, swap_group())
        assert out == (X * X + Y * Y).scale(Fraction(1, 2))

    def test_idempotent_random(self, rng):
        g = s3_group()
        for _ in range(20):
            terms = {
                tuple(rng.randint(0, 2) for _ in range(3)): Fraction(rng.randint(-4, 4))
                for _ in range(4)
            }
            f = Polynomial(QQ, 3, terms)
            r1 = reynolds(f, g)
            assert reynolds(r1, g) == r1
            assert is_invariant(r1, g)

    def test_characteristic_guard(self):
        f2 = PrimeField(2)
        swap = ((f2.zero, f2.one), (f2.one, f2.zero))
        g = close_group([swap], f2)
        with pytest.raises(FieldError):
            reynolds(Polynomial.variable(f2, 2, 0), g)


class TestIsInvariant:
    def test_xy_under_sign(self):
        assert is_invariant(X * Y, sign_group())

    def test_x_not_invariant(self):
        assert not is_invariant(X, sign_group())

    def test_elementary_symmetric_under_s3(self):
        assert is_invariant(elem_sym(2, 3, QQ), s3_group())


class TestInvariantDim:
    @pytest.mark.parametrize("degree,expected", [(2, 3), (3, 0)])
    def test_sign_group(self, degree, expected):
        assert invariant_dim(sign_group(), degree) == expected

    def test_swap_group(self):
        assert invariant_dim(swap_group(), 2) == 2


class TestPullback:
    def test_matches_orbit_chern(self):
        orb = [lf(1, 0), lf(-1, 0)]
        assert pullback_symmetric(elem_sym(2, 2, QQ), orb) == orbit_chern(orb, 2)

    def test_e1(self):
        forms = [lf(1, 0, 0), lf(0, 1, 0), lf(0, 0, 1)]
        assert pullback_symmetric(elem_sym(1, 3, QQ), forms) == orbit_chern(forms, 1)

    def test_product_expansion(self):
        z1z2 = Polynomial(QQ, 2, {(1, 1): Fraction(1)})
        assert pullback_symmetric(z1z2, [lf(1, 1), lf(1, -1)]) == X * X - Y * Y

    def test_asymmetric_rejected(self):
        z1 = Polynomial.variable(QQ, 2, 0)
        with pytest.raises(ValueError):
            pullback_symmetric(z1, [lf(1, 0), lf(0, 1)])


class TestSubalgebraDims:
    def quadrics(self):
        xs = X * X
        ys = Y * Y
        xy2 = (X + Y) * (X + Y)
        return [xs, ys, xy2]

    def test_degree_2(self):
        assert subalgebra_graded_dims(self.quadrics(), 2) == [1, 0, 3]

    def test_degree_4(self):
        assert subalgebra_graded_dims(self.quadrics(), 4)[4] == 5

    def test_elementary_symmetric_generators(self):
        gens = [elem_sym(r, 3, QQ) for r in (1, 2, 3)]
        assert subalgebra_graded_dims(gens, 3)[3] == 3  # partitions of 3

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            subalgebra_graded_dims([X + X * X], 2)

    def test_contained_in_invariants(self, rng):
        g = swap_group()
        orb = orbit_of_form(lf(1, 0), g)
        gens = [orbit_chern(orb, r) for r in (1, 2)]
        dims = subalgebra_graded_dims(gens, 5)
        for k in range(1, 6):
            assert dims[k] <= invariant_dim(g, k)


class TestGenerationCheck:
    def test_sign_group_quadric_seeds(self):
        out = generation_check(sign_group(), [lf(1, 0), lf(0, 1), lf(1, 1)], 4)
        assert out["generated"]

    def test_swap_group_single_seed(self):
        out = generation_check(swap_group(), [lf(1, 0)], 4)
        assert out["generated"]

    def test_trivial_group_short(self):
        trivial = close_group([qm([[1, 0], [0, 1]])], QQ)
        out = generation_check(trivial, [lf(1, 0)], 1)
        assert not out["generated"]
        assert out["per_degree"][1]["invariant_dim"] == 2
        assert out["per_degree"][1]["subalgebra_dim"] == 1


class TestZ2Counterexample:
    def test_report(self):
        rep = z2_counterexample_report()
        assert rep["xy_invariant"]
        assert rep["single_image_membership_hits"] == 0
        assert rep["quadratic_pullbacks_in_single_span"]
        assert rep["polarization_identity"]
        assert rep["algebra_membership"]
