import numpy as np
import pytest

from cv_triparty import oracle
from cv_triparty.gaussian import (
    GaussianState,
    QuadratureMap,
    apply_map,
    beamsplitter_map,
    combo_variance,
    is_symplectic,
    squeezed_inputs,
    symplectic_form,
    vacuum_state,
)
from cv_triparty.symmetric import SymmetricParams, build_symmetric_state
from cv_triparty.travelling_wave import PAPER_LITERAL, AsymParams, tw_transform


def random_pure_state(n_modes, rng):
    """Random valid pure Gaussian state with decoupled X/Y blocks."""
    mx = rng.normal(size=(n_modes, n_modes)) + 2.0 * np.eye(n_modes)
    my = np.linalg.inv(mx).T
    qmap = QuadratureMap.from_blocks(mx, my)
    return apply_map(vacuum_state(n_modes), qmap)


class TestVacuum:
    def test_single_mode(self):
        assert np.array_equal(vacuum_state(1).cov, np.eye(2))

    def test_three_modes(self):
        assert np.array_equal(vacuum_state(3).cov, np.eye(6))

    def test_zero_modes_rejected(self):
        with pytest.raises(ValueError):
            vacuum_state(0)


class TestSqueezedInputs:
    def test_zero_squeezing_is_vacuum(self):
        state = squeezed_inputs([("y", 0.0), ("x", 0.0), ("x", 0.0)])
        assert np.array_equal(state.cov, np.eye(6))

    def test_y_squeezed_mode(self):
        state = squeezed_inputs([("y", 1.0)])
        assert state.variance(state.x_index(1)) == pytest.approx(np.e)
        assert state.variance(state.y_index(1)) == pytest.approx(1.0 / np.e)

    @pytest.mark.parametrize("r", [0.0, 0.3, 1.0, 2.5])
    def test_minimum_uncertainty_product(self, r):
        state = squeezed_inputs([("x", r), ("y", r)])
        for mode in (1, 2):
            vx = state.variance(state.x_index(mode))
            vy = state.variance(state.y_index(mode))
            assert vx * vy == pytest.approx(1.0, abs=1e-14)

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            squeezed_inputs([("x", -0.1)])

    def test_bad_axis_rejected(self):
        with pytest.raises(ValueError):
            squeezed_inputs([("z", 0.5)])


class TestBeamsplitter:
    def test_zero_reflectivity_is_identity(self):
        qmap = beamsplitter_map(3, 1, 2, 0.0)
        assert np.array_equal(qmap.mat, np.eye(6))

    def test_first_output_row_coefficients(self):
        qmap = beamsplitter_map(2, 1, 2, 2.0 / 3.0)
        np.testing.assert_allclose(
            qmap.x_block[0], [np.sqrt(1.0 / 3.0), np.sqrt(2.0 / 3.0)], atol=1e-15
        )

    @pytest.mark.parametrize("refl", [0.0, 0.25, 2.0 / 3.0, 1.0])
    def test_orthogonal(self, refl):
        qmap = beamsplitter_map(3, 2, 3, refl)
        np.testing.assert_allclose(qmap.mat @ qmap.mat.T, np.eye(6), atol=1e-14)

    def test_reflectivity_range(self):
        with pytest.raises(ValueError):
            beamsplitter_map(2, 1, 2, 1.2)

    def test_distinct_modes_required(self):
        with pytest.raises(ValueError):
            beamsplitter_map(2, 1, 1, 0.5)


class TestApplyMap:
    def test_identity_leaves_state(self):
        state = squeezed_inputs([("x", 0.7), ("y", 0.2)])
        out = apply_map(state, QuadratureMap(n_modes=2, mat=np.eye(4)))
        np.testing.assert_allclose(out.cov, state.cov)

    def test_vacuum_invariant_under_passive_map(self):
        out = apply_map(vacuum_state(3), beamsplitter_map(3, 1, 3, 0.41))
        np.testing.assert_allclose(out.cov, np.eye(6), atol=1e-14)

    def test_travelling_wave_map_matches_monte_carlo(self):
        qmap = tw_transform(AsymParams(), 1.0)
        state = apply_map(vacuum_state(3), qmap)
        estimate, se = oracle.mc_covariance(qmap, 10**6, seed=11)
        assert np.all(np.abs(estimate - state.cov) <= 5.0 * se)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_map(vacuum_state(2), QuadratureMap(n_modes=3, mat=np.eye(6)))


class TestIsSymplectic:
    def test_beamsplitter(self):
        assert is_symplectic(beamsplitter_map(3, 1, 2, 0.37), 1e-10)

    def test_canonical_travelling_wave(self):
        qmap = tw_transform(AsymParams(kappa1=1.0, kappa2=0.6), 1.0)
        assert is_symplectic(qmap, 1e-10)
        # independent route: exponential of the equations of motion
        gen_x = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.6], [1.0, -0.6, 0.0]])
        t = 1.0 / np.sqrt(1.0 - 0.36)
        np.testing.assert_allclose(qmap.x_block, oracle.matexp(gen_x, t), atol=1e-10)

    def test_paper_literal_fails(self):
        params = AsymParams(coefficient_mode=PAPER_LITERAL)
        qmap = tw_transform(params, 0.248)
        assert not is_symplectic(qmap, 1e-10)
        # commutator defect of the first mode
        c = qmap.x_block[0] @ qmap.y_block[0]
        assert c == pytest.approx(0.9448264, abs=1e-6)


class TestComboVariance:
    def test_vacuum_single_quadrature(self):
        state = vacuum_state(3)
        c = np.zeros(6)
        c[0] = 1.0
        assert combo_variance(state, c) == 1.0

    def test_vacuum_difference(self):
        state = vacuum_state(3)
        c = np.zeros(6)
        c[0], c[2] = 1.0, -1.0
        assert combo_variance(state, c) == 2.0

    def test_symmetric_model_difference(self):
        state = build_symmetric_state(SymmetricParams(r=1.0))
        c = np.zeros(6)
        c[0], c[2] = 1.0, -1.0
        assert combo_variance(state, c) == pytest.approx(2.0 / np.e, abs=1e-12)

    def test_matches_monte_carlo(self):
        qmap = tw_transform(AsymParams(), 0.8)
        state = apply_map(vacuum_state(3), qmap)
        estimate, se = oracle.mc_covariance(qmap, 10**5, seed=21)
        c = np.array([1.0, 0.0, -0.5, 0.3, 0.0, 0.0])
        mc_value = c @ estimate @ c
        # error of the combination variance, first order in the entry errors
        mc_err = np.abs(c)[:, None] * np.abs(c)[None, :] * se
        assert abs(combo_variance(state, c) - mc_value) <= 5.0 * mc_err.sum()

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            combo_variance(vacuum_state(2), [1.0, 0.0])


class TestStateValidation:
    def test_asymmetric_cov_rejected(self):
        cov = np.eye(2)
        cov[0, 1] = 1e-6
        with pytest.raises(ValueError):
            GaussianState(n_modes=1, cov=cov)

    def test_uncertainty_violation_rejected(self):
        # both quadratures below vacuum noise is unphysical
        with pytest.raises(ValueError):
            GaussianState(n_modes=1, cov=0.5 * np.eye(2))

    def test_unphysical_allowed_when_flagged(self):
        state = GaussianState(n_modes=1, cov=0.5 * np.eye(2), physical=False)
        assert state.variance(0) == 0.5

    def test_negative_definite_rejected_even_unflagged(self):
        with pytest.raises(ValueError):
            GaussianState(n_modes=1, cov=-np.eye(2), physical=False)

    def test_unitary_map_must_be_symplectic(self):
        with pytest.raises(ValueError):
            QuadratureMap(n_modes=1, mat=2.0 * np.eye(2))


class TestInvariants:
    def test_model_maps_symplectic(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            refl = rng.uniform(0.0, 1.0)
            assert is_symplectic(beamsplitter_map(3, 1, 2, refl), 1e-10)
        for zt in np.linspace(0.0, 4.0, 9):
            assert is_symplectic(tw_transform(AsymParams(), zt), 1e-10)

    def test_apply_map_preserves_symmetry_and_uncertainty(self):
        rng = np.random.default_rng(17)
        omega = symplectic_form(3)
        for _ in range(20):
            state = random_pure_state(3, rng)
            assert np.abs(state.cov - state.cov.T).max() <= 1e-12
            eigs = np.linalg.eigvalsh(state.cov + 1j * omega)
            assert eigs.min() >= -1e-9

    def test_pure_state_determinant(self):
        for r in (0.0, 0.5, 1.0, 3.0):
            state = build_symmetric_state(SymmetricParams(r=r))
            assert np.linalg.det(state.cov) == pytest.approx(1.0, abs=1e-9)
        for zt in (0.0, 1.0, 2.0):
            qmap = tw_transform(AsymParams(), zt)
            state = apply_map(vacuum_state(3), qmap)
            assert np.linalg.det(state.cov) == pytest.approx(1.0, abs=1e-9)
