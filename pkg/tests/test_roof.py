"""Tests for the see-saw convex-roof solver and its companions."""

import numpy as np
import pytest

from entfid import (
    ConvexSetSpec,
    Decomposition,
    DensityMatrix,
    ProductVector,
    PureState,
    SeparableEnsemble,
    align_decomposition,
    assemble,
    bell_state,
    bures_measure_2q,
    closest_separable_from,
    convex_set_fidelity,
    fidelity,
    fs_2q,
    fs_pure_bipartite,
    geometric_measure_2q,
    ghz_state,
    linalg,
    solve_generalized_roof,
    solve_roof,
    stationarity_residual,
    two_qubit_schmidt_uniformity,
)
from entfid.verify import simplex_fidelity_max


def _random_rho(dims, rank, seed):
    return DensityMatrix(dims, linalg.random_density_matrix(dims, rank, seed))


def _random_pure_product(rng, dims):
    factors = []
    for d in dims:
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        factors.append(v / np.linalg.norm(v))
    return ProductVector(tuple(factors))


def test_two_qubit_matches_closed_form():
    """Solver f_s equals the concurrence closed form on random states."""
    worst = 0.0
    for seed in range(12):
        rho = _random_rho((2, 2), 1 + seed % 4, 6000 + seed)
        res = solve_roof(rho, seed=seed)
        worst = max(worst, abs(res.f_s - fs_2q(rho)))
        assert res.converged
    assert worst <= 1e-6


def test_separable_input_is_fixed():
    """Assembled separable states come back with f_s = 1."""
    rng = np.random.default_rng(13)
    for trial in range(3):
        k = 3 + trial
        w = rng.dirichlet(np.ones(k))
        ens = SeparableEnsemble(
            w, tuple(_random_pure_product(rng, (2, 2)) for _ in range(k))
        )
        res = solve_roof(assemble(ens), seed=trial)
        assert res.f_s >= 1.0 - 1e-6
        assert res.e_g <= 1e-6


def test_bell_diagonal_witness_state():
    """The even mixture of |psi+> and |phi+> is separable although each
    element of that decomposition is maximally entangled."""
    rho = Decomposition(
        np.array([0.5, 0.5]), (bell_state("psi+"), bell_state("phi+"))
    ).reconstruct()
    res = solve_roof(rho, seed=0)
    assert res.f_s >= 1.0 - 1e-6


def test_pure_input_reduces_to_geometric():
    """A rank-1 input admits only decompositions into copies of itself."""
    rho = DensityMatrix((2, 2), bell_state().projector())
    res = solve_roof(rho, seed=0)
    assert abs(res.f_s - 0.5) <= 1e-9
    for st in res.decomposition.states:
        overlap = abs(np.vdot(st.amplitudes, bell_state().amplitudes)) ** 2
        assert abs(overlap - 1.0) <= 1e-10


def test_objective_trace_monotone():
    rho = _random_rho((2, 2), 4, 777)
    res = solve_roof(rho, seed=0)
    trace = np.asarray(res.objective_trace)
    assert np.all(np.diff(trace) >= -1e-12)
    assert abs(trace[-1] - res.f_s) <= 1e-12


def test_result_invariants():
    rho = _random_rho((2, 2), 3, 778)
    res = solve_roof(rho, seed=0)
    assert res.e_g == 1.0 - res.f_s
    assert abs(sum(res.decomposition.weights) - 1.0) <= 1e-12
    assert abs(sum(res.ensemble.weights) - 1.0) <= 1e-12
    # ensemble weights are p_i F_s(psi_i), renormalized
    fvals = np.array(
        [fs_pure_bipartite(st).f_s for st in res.decomposition.states]
    )
    q = res.decomposition.weights * fvals
    np.testing.assert_allclose(res.ensemble.weights, q / q.sum(), atol=1e-10)
    assert res.stationarity_residual <= 1e-5


def test_decomposition_and_ensemble_witness_fs():
    """The returned pair certifies f_s: the decomposition rebuilds rho and
    the ensemble assembles to a separable state at fidelity f_s."""
    rho = _random_rho((2, 2), 4, 779)
    res = solve_roof(rho, seed=0)
    assert np.abs(res.decomposition.reconstruct().matrix - rho.matrix).max() <= 1e-8
    sigma = assemble(res.ensemble)
    assert abs(fidelity(rho, sigma) - res.f_s) <= 1e-6


def test_rejects_bad_arguments():
    rho = _random_rho((2, 2), 3, 780)
    with pytest.raises(ValueError, match="rank"):
        solve_roof(rho, s=2)
    with pytest.raises(ValueError, match="restarts"):
        solve_roof(rho, restarts=0)


def test_caratheodory_saturation():
    """Raising s beyond d^2 product terms cannot improve f_s; lowering it
    below d^2 cannot beat the d^2 run (same seeds throughout)."""
    for seed in range(4):
        rho = _random_rho((2, 2), 4, 6100 + seed)
        full = solve_roof(rho, s=16, seed=seed).f_s
        for s in (4, 8, 12):
            assert full >= solve_roof(rho, s=s, seed=seed).f_s - 1e-8


def test_non_converged_flag(monkeypatch):
    """Hitting the iteration cap is reported, with the best-so-far returned."""
    monkeypatch.setattr("entfid.roof.MAX_ITERATIONS", 2)
    rho = _random_rho((2, 2), 4, 781)
    res = solve_roof(rho, restarts=1, seed=0)
    assert not res.converged
    assert 0.0 < res.f_s <= 1.0


def test_closest_separable_single_pure():
    dec = Decomposition(np.array([1.0]), (bell_state(),))
    ens = closest_separable_from(dec)
    assert len(ens) == 1
    np.testing.assert_allclose(ens.weights, [1.0])
    overlap = abs(np.vdot(ens.vectors[0].vector(), bell_state().amplitudes)) ** 2
    assert abs(overlap - 0.5) <= 1e-10


def test_closest_separable_of_eigendecomposition_is_suboptimal():
    """Prop. 4 direction: a generic eigendecomposition induces a separable
    state strictly below the optimum."""
    rho = _random_rho((2, 2), 4, 782)
    worst_dec = Decomposition(np.array([1.0]), (bell_state(),))
    eig = np.linalg.eigh(rho.matrix)
    states = tuple(PureState((2, 2), eig.eigenvectors[:, k]) for k in range(4))
    dec = Decomposition(eig.eigenvalues / eig.eigenvalues.sum(), states)
    sigma = assemble(closest_separable_from(dec))
    best = solve_roof(rho, seed=0).f_s
    assert fidelity(rho, sigma) <= best + 1e-9


def test_align_decomposition_round_trip():
    """Prop. 4 converse: re-aligning against the solver's own ensemble
    recovers a decomposition with the same roof value."""
    rho = _random_rho((2, 2), 4, 783)
    res = solve_roof(rho, seed=0)
    dec = align_decomposition(rho, res.ensemble)
    assert np.abs(dec.reconstruct().matrix - rho.matrix).max() <= 1e-8
    value = sum(
        w * fs_pure_bipartite(st).f_s for w, st in zip(dec.weights, dec.states)
    )
    assert abs(value - res.f_s) <= 1e-6


def test_stationarity_residual_witness():
    """The Bell-diagonal counterexample satisfies stationarity exactly while
    sitting at objective 1/2, far below the true f_s = 1: the conditions are
    necessary but not sufficient."""
    dec = Decomposition(np.array([0.5, 0.5]), (bell_state("psi+"), bell_state("phi+")))
    products = [fs_pure_bipartite(st).product for st in dec.states]
    assert stationarity_residual(dec, products) <= 1e-12
    objective = sum(
        w * fs_pure_bipartite(st).f_s for w, st in zip(dec.weights, dec.states)
    )
    assert abs(objective - 0.5) <= 1e-12
    true_fs = solve_roof(dec.reconstruct(), seed=0).f_s
    assert true_fs >= 1.0 - 1e-6


def test_stationarity_residual_single_element():
    dec = Decomposition(np.array([1.0]), (bell_state(),))
    products = [fs_pure_bipartite(bell_state()).product]
    assert stationarity_residual(dec, products) <= 1e-14


def test_stationarity_residual_validates_lengths():
    dec = Decomposition(np.array([1.0]), (bell_state(),))
    with pytest.raises(ValueError):
        stationarity_residual(dec, [])


def test_schmidt_uniformity():
    """Optimal two-qubit decompositions have equal element concurrences;
    a pure input and the solver output must both be uniform, while a raw
    eigendecomposition generally is not."""
    pure = Decomposition(np.array([1.0]), (bell_state(),))
    assert two_qubit_schmidt_uniformity(pure) == 0.0
    rho = _random_rho((2, 2), 4, 784)
    res = solve_roof(rho, seed=0)
    assert two_qubit_schmidt_uniformity(res.decomposition) <= 1e-4
    eig = np.linalg.eigh(rho.matrix)
    states = tuple(PureState((2, 2), eig.eigenvectors[:, k]) for k in range(4))
    dec = Decomposition(eig.eigenvalues / eig.eigenvalues.sum(), states)
    # diagnostic only: generic eigendecompositions spread widely
    assert two_qubit_schmidt_uniformity(dec) >= 0.0
    with pytest.raises(ValueError, match="two-qubit"):
        two_qubit_schmidt_uniformity(
            Decomposition(np.array([1.0]), (ghz_state(3),))
        )


def test_generalized_roof_identity():
    """f(x) = x recovers e_g = 1 - f_s."""
    for seed in range(5):
        rho = _random_rho((2, 2), 1 + seed % 4, 6200 + seed)
        val = solve_generalized_roof(rho, lambda x: x, seed=seed)
        assert abs(val - geometric_measure_2q(rho)) <= 1e-5


def test_generalized_roof_bures():
    """The Bures function of e_g has a roof equal to the closed form."""
    for seed in range(5):
        rho = _random_rho((2, 2), 1 + seed % 4, 6300 + seed)
        val = solve_generalized_roof(
            rho, lambda x: 2.0 - 2.0 * np.sqrt(1.0 - x), seed=seed
        )
        assert abs(val - bures_measure_2q(rho)) <= 1e-5


def test_generalized_roof_validates_f():
    rho = _random_rho((2, 2), 2, 785)
    with pytest.raises(ValueError, match="f\\(0\\)"):
        solve_generalized_roof(rho, lambda x: x + 1.0)
    with pytest.raises(ValueError, match="nonnegative"):
        solve_generalized_roof(rho, lambda x: -x)


def test_geometric_measure_is_convex_on_mixtures():
    """E_G(lam rho + (1-lam) tau) <= lam E_G(rho) + (1-lam) E_G(tau)."""
    for seed in range(50):
        rho = _random_rho((2, 2), 2, 6400 + seed)
        tau = _random_rho((2, 2), 4, 6500 + seed)
        for lam in (0.25, 0.5, 0.75):
            mix = DensityMatrix(
                (2, 2), lam * rho.matrix + (1.0 - lam) * tau.matrix
            )
            bound = lam * geometric_measure_2q(rho) + (1.0 - lam) * geometric_measure_2q(tau)
            assert geometric_measure_2q(mix) <= bound + 1e-5


def test_convex_set_trivial_membership():
    """F(rho, X) = 1 when rho itself generates the set."""
    rho = _random_rho((2, 2), 3, 786)
    res = convex_set_fidelity(rho, ConvexSetSpec((rho,)))
    assert abs(res.f_c - 1.0) <= 1e-9
    mixed = DensityMatrix((2,), np.eye(2) / 2)
    basis = ConvexSetSpec(
        (DensityMatrix((2,), np.diag([1.0, 0.0])), DensityMatrix((2,), np.diag([0.0, 1.0])))
    )
    assert abs(convex_set_fidelity(mixed, basis).f_c - 1.0) <= 1e-9


def test_convex_set_plus_state_vs_grid():
    """|+><+| against the classical-bit set: exact value 1/2, confirmed by a
    one-parameter grid over mixtures q|0><0| + (1-q)|1><1|."""
    plus = DensityMatrix((2,), np.full((2, 2), 0.5))
    basis = ConvexSetSpec(
        (DensityMatrix((2,), np.diag([1.0, 0.0])), DensityMatrix((2,), np.diag([0.0, 1.0])))
    )
    res = convex_set_fidelity(plus, basis)
    grid = 0.0
    for q in np.arange(0.0, 1.0 + 1e-9, 1e-4):
        sigma = DensityMatrix((2,), np.diag([q, 1.0 - q]))
        grid = max(grid, fidelity(plus, sigma))
    assert abs(res.f_c - 0.5) <= 1e-9
    assert res.f_c >= grid - 1e-8


def test_convex_set_matches_simplex_oracle():
    """Random instances against direct concave maximization over the simplex."""
    rng = np.random.default_rng(90)
    for trial in range(4):
        d = 2 + trial % 2
        rho = _random_rho((d,), d, 6600 + trial)
        points = tuple(
            DensityMatrix((d,), linalg.random_density_matrix((d,), d, 6700 + 10 * trial + j))
            for j in range(2 + trial % 2)
        )
        res = convex_set_fidelity(rho, ConvexSetSpec(points))
        ref = simplex_fidelity_max(rho, points)
        assert abs(res.f_c - ref) <= 1e-4


def test_convex_set_result_structure():
    rho = _random_rho((2,), 2, 787)
    points = (
        DensityMatrix((2,), linalg.random_density_matrix((2,), 2, 788)),
        DensityMatrix((2,), linalg.random_density_matrix((2,), 2, 789)),
    )
    res = convex_set_fidelity(rho, ConvexSetSpec(points))
    assert abs(sum(res.weights) - 1.0) <= 1e-10
    assert abs(sum(res.set_weights) - 1.0) <= 1e-10
    assert len(res.set_weights) == 2
    assert res.converged
    for member in res.members:
        assert member.dims == (2,)


def test_convex_set_validates_input():
    rho = _random_rho((2,), 2, 790)
    with pytest.raises(ValueError):
        ConvexSetSpec(())
    with pytest.raises(ValueError):
        ConvexSetSpec(
            (DensityMatrix((2,), np.eye(2) / 2), DensityMatrix((3,), np.eye(3) / 3))
        )
    with pytest.raises(ValueError):
        convex_set_fidelity(rho, ConvexSetSpec((DensityMatrix((3,), np.eye(3) / 3),)))


def test_solver_deterministic():
    rho = _random_rho((2, 2), 3, 791)
    a = solve_roof(rho, seed=5)
    b = solve_roof(rho, seed=5)
    assert a.f_s == b.f_s
    np.testing.assert_array_equal(
        a.decomposition.weights, b.decomposition.weights
    )
