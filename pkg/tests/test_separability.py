import numpy as np
import pytest

from entwit.errors import InvalidArgument, InvalidSubsystemSelection, NoPptViolation
from entwit.linalg import DensityState, Operator, identity, partial_transpose
from entwit.separability import (
    Certification,
    Provenance,
    best_product_vector,
    closest_separable,
    is_ppt,
    min_on_product_states,
    witness_from_ppt,
    witness_from_separable_approximation,
)
from entwit.states import (
    max_entangled_projector,
    maximally_mixed,
    random_density,
    random_product_state,
    random_pure_state,
    singlet,
    werner,
)

from conftest import SWAP_2


def twirled_closest():
    """Werner-line candidate at singlet weight 1/3, the PPT boundary."""
    return DensityState((2, 2), singlet().data / 3 + (2 / 3) * np.eye(4) / 4)


class TestIsPpt:
    def test_singlet(self):
        verdict, lmin = is_ppt(singlet())
        assert not verdict
        assert abs(lmin + 0.5) <= 1e-12

    def test_maximally_mixed(self):
        verdict, lmin = is_ppt(maximally_mixed((2, 2)))
        assert verdict
        assert abs(lmin - 0.25) <= 1e-12

    def test_werner(self):
        verdict, lmin = is_ppt(werner())
        assert not verdict
        assert abs(lmin + 0.125) <= 1e-12

    def test_products_pass(self, rng):
        for dims in [(2, 2), (2, 3), (3, 3)]:
            for _ in range(20):
                verdict, lmin = is_ppt(random_product_state(dims, rng))
                assert verdict and lmin >= -1e-10

    def test_requires_bipartite(self):
        with pytest.raises(InvalidSubsystemSelection):
            is_ppt(maximally_mixed((2, 2, 2)))


class TestWitnessFromPpt:
    def test_singlet(self):
        wit = witness_from_ppt(singlet())
        np.testing.assert_allclose(wit.h.data, SWAP_2 / 2, atol=1e-12)
        assert abs(wit.value_on_target + 0.5) <= 1e-12
        assert wit.provenance is Provenance.PPT_EIGENVECTOR
        assert wit.certification is Certification.EXACT

    def test_swap_half_is_pt_of_bell_projector(self):
        bell = max_entangled_projector(2)
        np.testing.assert_allclose(partial_transpose(bell, 1).data, SWAP_2 / 2, atol=1e-15)

    def test_werner(self):
        wit = witness_from_ppt(werner())
        np.testing.assert_allclose(wit.h.data, SWAP_2 / 2, atol=1e-12)
        direct = np.trace(SWAP_2 / 2 @ werner().data).real
        assert abs(direct + 0.125) <= 1e-15
        assert abs(wit.value_on_target - direct) <= 1e-12

    def test_separable_input(self):
        with pytest.raises(NoPptViolation):
            witness_from_ppt(maximally_mixed((2, 2)))

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_value_equals_min_pt_eigenvalue(self, rng, dims):
        for _ in range(10):
            rho = random_pure_state(dims, rng)
            _, lmin = is_ppt(rho)
            wit = witness_from_ppt(rho)
            assert abs(wit.value_on_target - lmin) <= 1e-10

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
    def test_nonnegative_on_products(self, dims):
        rng = np.random.default_rng(5)
        wit = witness_from_ppt(random_pure_state(dims, rng))
        assert min_on_product_states(wit.h, 10_000, rng) >= -1e-10

    def test_sweep_order_invariance_nondegenerate(self, rng):
        for dims in [(2, 2), (2, 3), (3, 3)]:
            rho = random_pure_state(dims, rng)
            a = witness_from_ppt(rho, order="row")
            b = witness_from_ppt(rho, order="column")
            np.testing.assert_allclose(a.h.data, b.h.data, atol=1e-9)

    def test_degenerate_negative_eigenvalue(self):
        # PT of the 3x3 maximally entangled projector is SWAP/3, with -1/3 three times
        rho = DensityState((3, 3), max_entangled_projector(3).data)
        for order in ("row", "column"):
            wit = witness_from_ppt(rho, order=order)
            assert abs(wit.value_on_target + 1 / 3) <= 1e-10


class TestBestProductVector:
    def test_finds_product_maximum(self, rng):
        # max over product states of <ab|singlet|ab> is 1/2
        val, a, b = best_product_vector(singlet(), rng)
        assert abs(val - 0.5) <= 1e-10
        ab = np.kron(a, b)
        assert abs(np.vdot(ab, singlet().data @ ab).real - val) <= 1e-12


class TestClosestSeparable:
    def test_twirled_candidate_distance(self):
        sigma = twirled_closest()
        assert is_ppt(sigma)[0]
        assert abs(np.linalg.norm(singlet().data - sigma.data) - 1 / np.sqrt(3)) <= 1e-14

    def test_separable_input(self, rng):
        approx = closest_separable(maximally_mixed((2, 2)), 50, rng)
        assert approx.distance <= 1e-6

    def test_singlet_distance(self):
        approx = closest_separable(singlet(), 2000, np.random.default_rng(0xC0FFEE))
        assert abs(approx.distance - 1 / np.sqrt(3)) <= 1e-2
        assert approx.distance >= 1 / np.sqrt(3) - 1e-12

    def test_structure_and_monotonicity(self, rng):
        rho = random_pure_state((2, 3), rng)
        approx = closest_separable(rho, 200, rng)
        history = np.asarray(approx.history)
        assert np.all(np.diff(history) <= 0)
        assert approx.distance == history[-1]
        assert np.all(approx.weights >= 0)
        assert abs(approx.weights.sum() - 1) <= 1e-12
        rebuilt = sum(w * np.kron(a, b) for w, (a, b) in zip(approx.weights, approx.components))
        np.testing.assert_allclose(rebuilt, approx.sigma.data, atol=1e-12)
        for a, b in approx.components:
            assert abs(np.trace(a) - 1) <= 1e-12 and abs(np.trace(b) - 1) <= 1e-12
        assert is_ppt(approx.sigma)[0]
        assert abs(np.linalg.norm(rho.data - approx.sigma.data) - approx.distance) <= 1e-12

    def test_rejects_zero_iterations(self, rng):
        with pytest.raises(InvalidArgument):
            closest_separable(singlet(), 0, rng)

    def test_seeded_reproducible(self):
        rho = random_density((2, 2), np.random.default_rng(3))
        a = closest_separable(rho, 30, np.random.default_rng(9))
        b = closest_separable(rho, 30, np.random.default_rng(9))
        assert a.history == b.history
        np.testing.assert_array_equal(a.sigma.data, b.sigma.data)


class TestHeuristicWitness:
    def test_singlet(self):
        rng = np.random.default_rng(1)
        approx = closest_separable(singlet(), 500, rng)
        wit = witness_from_separable_approximation(singlet(), approx, rng)
        assert wit.certification is Certification.HEURISTIC
        assert wit.provenance is Provenance.CLOSEST_SEPARABLE
        assert wit.value_on_target < 0
        # sigma* - rho + I/6 = SWAP/3 for the exact closest state
        np.testing.assert_allclose(wit.h.data, SWAP_2 / 3, atol=2e-2)
        assert min_on_product_states(wit.h, 2000, rng) >= -1e-6

    def test_candidate_from_exact_closest_state(self, rng):
        from entwit.separability import SeparableApproximation

        sigma = twirled_closest()
        approx = SeparableApproximation(sigma, [], np.array([]), 1 / np.sqrt(3))
        wit = witness_from_separable_approximation(singlet(), approx, rng)
        np.testing.assert_allclose(wit.h.data, SWAP_2 / 3, atol=1e-9)
        assert abs(wit.value_on_target + 1 / 3) <= 1e-9

    def test_separable_target_gives_no_witness(self, rng):
        from entwit.errors import NotAWitness

        rho = maximally_mixed((2, 2))
        approx = closest_separable(rho, 5, rng)
        with pytest.raises(NotAWitness):
            witness_from_separable_approximation(rho, approx, rng)


def test_min_on_product_states_identity(rng):
    assert abs(min_on_product_states(identity((2, 2)), 10, rng) - 1) <= 1e-12
    assert min_on_product_states(Operator((2, 2), -np.eye(4)), 3, rng) < 0
