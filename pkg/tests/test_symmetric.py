import numpy as np
import pytest

from cv_triparty.criteria import duan_simon, reid_product, vlf_pair, wang_bound
from cv_triparty.gaussian import QuadratureMap, apply_map, combo_variance
from cv_triparty.symmetric import (
    SymmetricParams,
    build_symmetric_state,
    closed_forms,
    network_map,
    verify_consistency,
)


def eq6_matrix(mu, nu):
    """Output operators of the two-splitter network in terms of the inputs."""
    return np.array([
        [np.sqrt(1 - mu), np.sqrt(mu), 0.0],
        [np.sqrt(mu * (1 - nu)), -np.sqrt((1 - mu) * (1 - nu)), np.sqrt(nu)],
        [np.sqrt(mu * nu), -np.sqrt(nu * (1 - mu)), -np.sqrt(1 - nu)],
    ])


class TestParams:
    def test_defaults_are_fully_symmetric(self):
        params = SymmetricParams(r=1.0)
        assert params.mu == pytest.approx(2.0 / 3.0)
        assert params.nu == pytest.approx(0.5)

    def test_invalid_values_rejected(self):
        with pytest.raises(ValueError):
            SymmetricParams(r=-0.2)
        with pytest.raises(ValueError):
            SymmetricParams(r=1.0, mu=1.1)
        with pytest.raises(ValueError):
            SymmetricParams(r=1.0, nu=-0.1)


class TestNetwork:
    @pytest.mark.parametrize("mu,nu", [
        (2.0 / 3.0, 0.5), (0.5, 0.5), (0.3, 0.8), (0.0, 0.0), (1.0, 1.0),
    ])
    def test_matches_printed_network(self, mu, nu):
        qmap = network_map(mu, nu)
        target = eq6_matrix(mu, nu)
        np.testing.assert_allclose(qmap.x_block, target, atol=1e-14)
        np.testing.assert_allclose(qmap.y_block, target, atol=1e-14)

    def test_network_is_orthogonal(self):
        mat = network_map(0.4, 0.7).mat
        np.testing.assert_allclose(mat @ mat.T, np.eye(6), atol=1e-14)


class TestBuildState:
    @pytest.mark.parametrize("mu,nu", [(2.0 / 3.0, 0.5), (0.2, 0.9)])
    def test_zero_squeezing_gives_vacuum(self, mu, nu):
        state = build_symmetric_state(SymmetricParams(r=0.0, mu=mu, nu=nu))
        np.testing.assert_allclose(state.cov, np.eye(6), atol=1e-14)

    def test_output_variance_r1(self):
        state = build_symmetric_state(SymmetricParams(r=1.0))
        expected = np.cosh(1.0) - np.sinh(1.0) / 3.0
        assert state.variance(state.x_index(1)) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("perm", [(2, 1, 3), (1, 3, 2), (3, 2, 1), (2, 3, 1)])
    def test_permutation_invariance(self, perm):
        state = build_symmetric_state(SymmetricParams(r=0.9))
        block = np.zeros((3, 3))
        for new, old in enumerate(perm):
            block[new, old - 1] = 1.0
        swapped = apply_map(state, QuadratureMap.from_blocks(block, block))
        np.testing.assert_allclose(swapped.cov, state.cov, atol=1e-12)

    def test_purity(self):
        for r in (0.0, 1.0, 2.5):
            state = build_symmetric_state(SymmetricParams(r=r))
            assert np.linalg.det(state.cov) == pytest.approx(1.0, abs=1e-9)


class TestClosedForms:
    def test_vacuum_limit(self):
        forms = closed_forms(0.0)
        assert forms.ds_plus == pytest.approx(4.0)
        assert forms.ds_minus == pytest.approx(4.0)
        assert forms.v_inf == pytest.approx(1.0)
        assert forms.reid_product == 1.0
        assert forms.v_ij == pytest.approx(4.0)
        assert forms.v_ijk == pytest.approx(4.0)

    def test_r1_values(self):
        forms = closed_forms(1.0)
        assert forms.ds_minus == pytest.approx(3.0384526895, abs=1e-9)
        assert forms.ds_plus == pytest.approx(9.3061923890, abs=1e-9)
        assert forms.v_inf == pytest.approx(0.6182136987, abs=1e-9)
        assert forms.v_ij == pytest.approx(1.7694497806, abs=1e-9)
        assert forms.v_ijk == pytest.approx(1.7403612951, abs=1e-9)

    def test_ds_minus_minimum(self):
        # calculus puts the minimum at r = ln(5)/2 with value 2 sqrt(20)/3
        r_star = 0.5 * np.log(5.0)
        assert r_star == pytest.approx(0.8047189562, abs=1e-9)
        expected = 2.0 * np.sqrt(20.0 / 9.0)
        assert closed_forms(r_star).ds_minus == pytest.approx(expected, abs=1e-12)
        # golden-section style scan agrees
        grid = np.linspace(0.5, 1.1, 20001)
        values = [closed_forms(r).ds_minus for r in grid]
        k = int(np.argmin(values))
        assert grid[k] == pytest.approx(r_star, abs=1e-3)
        assert values[k] >= expected - 1e-12

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            closed_forms(-1.0)


class TestConsistency:
    def test_vacuum_grid(self):
        assert verify_consistency([0.0]) < 1e-12

    def test_moderate_grid(self):
        assert verify_consistency([0.5, 1.0, 2.0]) < 1e-10

    def test_strong_squeezing(self):
        # e^6 dynamic range, slightly looser
        assert verify_consistency([3.0]) < 1e-8

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            verify_consistency([])


class TestNoSteeringTheorem:
    def test_reid_products_pinned_at_bound(self):
        for r in np.linspace(0.0, 3.0, 13):
            state = build_symmetric_state(SymmetricParams(r=r))
            for steered in (1, 2, 3):
                for steerer in (1, 2, 3):
                    if steered != steerer:
                        value = reid_product(state, steered, steerer).value
                        assert abs(value - 1.0) <= 1e-10

    def test_single_mode_wang_bound_matches(self):
        # one output cannot steer another: bound identically 1, like the state
        for r in np.linspace(0.0, 3.0, 13):
            assert wang_bound(3, 1, r) == pytest.approx(1.0, abs=1e-12)


class TestEntanglementRange:
    def test_ds_minus_window(self):
        # DS- falls below 4 exactly on (0, ln 5)
        r_max = np.log(5.0)
        for r in (0.05, 0.5, 1.0, 1.5, r_max - 1e-3):
            state = build_symmetric_state(SymmetricParams(r=r))
            _, minus = duan_simon(state, 1, 2)
            assert minus.value < 4.0
        for r in (r_max + 1e-3, 2.0, 3.0):
            state = build_symmetric_state(SymmetricParams(r=r))
            _, minus = duan_simon(state, 2, 3)
            assert minus.value > 4.0
        # bracket the boundary: the closed form changes sign across ln 5
        assert closed_forms(r_max - 1e-6).ds_minus < 4.0 < closed_forms(r_max + 1e-6).ds_minus

    def test_unoptimized_pair_correlation_starts_at_five(self):
        state = build_symmetric_state(SymmetricParams(r=0.0))
        c = np.zeros(6)
        c[0], c[1] = 1.0, -1.0
        x_part = combo_variance(state, c)
        c = np.zeros(6)
        c[3] = c[4] = c[5] = 1.0
        assert x_part + combo_variance(state, c) == pytest.approx(5.0)
        # the optimized gain recovers the bound instead
        assert vlf_pair(state, 1, 2, 3).value == pytest.approx(4.0)
