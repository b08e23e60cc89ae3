"""Convex-roof solver for the fidelity of separability of mixed states.

The fidelity of separability of rho equals the maximum over pure-state
decompositions of the weighted sum of per-element pure-state fidelities,
and the maximizing decomposition assembles the closest separable state
with weights proportional to p_i F_s(psi_i). The solver alternates two
closed-form maximizations of the purification overlap:

  step A  given product vectors and ensemble weights, the ancilla isometry
          maximizing the overlap is the polar factor of a cross-Gram
          matrix between the spectral purification of rho and the
          ensemble purification;
  step B  given the decomposition, each element's closest product vector
          is recomputed (exactly for two parties, by alternating
          contraction otherwise) and the ensemble weights follow the
          stationarity formula.

Neither step can decrease the objective, so the recorded objective trace
is non-decreasing up to roundoff. Restarts are seeded independently and
merged by taking the best final objective, earliest restart winning ties.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .geometric import _alternating_max, _random_unit, fs_pure_bipartite, fs_pure_multipartite
from .states import (
    Decomposition,
    DensityMatrix,
    ProductVector,
    PureState,
    SeparableEnsemble,
    ZERO_WEIGHT,
    _eigs_descending,
)

# the stationarity residual scales like the square root of the remaining
# objective gap, so the stop tolerance sits far below the residual target
OBJECTIVE_TOL = 5e-14
MAX_ITERATIONS = 5000
DEFAULT_RESTARTS = 8
INNER_RESTARTS = 4


@dataclass(frozen=True, eq=False)
class RoofResult:
    """Solver output: the fidelity value, the optimal decomposition, the
    separable ensemble it induces, and convergence diagnostics."""

    f_s: float
    e_g: float
    decomposition: Decomposition
    ensemble: SeparableEnsemble
    stationarity_residual: float
    objective_trace: tuple[float, ...]
    seed: int
    iterations: int
    converged: bool


@dataclass(frozen=True, eq=False)
class ConvexSetSpec:
    """A finite set of states whose convex hull is the target set."""

    extreme_points: tuple[DensityMatrix, ...]
    label: str = ""

    def __post_init__(self):
        points = tuple(self.extreme_points)
        if not points:
            raise ValueError("the set of extreme points must be nonempty")
        if any(p.dim != points[0].dim for p in points):
            raise ValueError("all extreme points must share one dimension")
        object.__setattr__(self, "extreme_points", points)

    @property
    def dim(self) -> int:
        return self.extreme_points[0].dim


@dataclass(frozen=True, eq=False)
class ConvexSetResult:
    """Best found decomposition of rho into mixed parts, each matched
    against one extreme point of the set."""

    f_c: float
    weights: np.ndarray
    members: tuple[DensityMatrix, ...]
    set_weights: np.ndarray
    objective_trace: tuple[float, ...]
    converged: bool


@dataclass
class _Outcome:
    weights: np.ndarray
    rows: np.ndarray
    slot_fid: np.ndarray
    factors: list
    objective: float
    trace: list[float]
    iterations: int
    converged: bool


def _products_bipartite(rows: np.ndarray, da: int, db: int):
    u, s, vh = np.linalg.svd(rows.reshape(-1, da, db))
    pf = s[:, 0] ** 2
    a = u[:, :, 0]
    b = vh[:, 0, :]
    phi = (a[:, :, None] * b[:, None, :]).reshape(rows.shape)
    factors = [(a[k], b[k]) for k in range(rows.shape[0])]
    return pf, phi, factors


def _products_multipartite(rows, p, dims, warm, rng, budget):
    count = rows.shape[0]
    pf = np.zeros(count)
    phi = np.zeros_like(rows)
    factors: list = [None] * count
    for k in range(count):
        if p[k] <= ZERO_WEIGHT:
            continue
        tensor = (rows[k] / np.sqrt(p[k])).reshape(dims)
        starts = [] if warm is None or warm[k] is None else [warm[k]]
        starts += [[_random_unit(rng, d) for d in dims] for _ in range(budget)]
        best_ov = -1.0
        best_fac = None
        for start in starts:
            fac, ov, _, _ = _alternating_max(tensor, list(start))
            if ov > best_ov:
                best_ov, best_fac = ov, fac
        factors[k] = tuple(best_fac)
        vec = best_fac[0]
        for f in best_fac[1:]:
            vec = np.kron(vec, f)
        phi[k] = vec
        pf[k] = p[k] * best_ov**2
    return pf, phi, factors


def _polar_isometry_step(sqlam, vec, phi, ensemble_weights):
    inner = phi.conj() @ vec
    gram = sqlam[:, None] * (inner.T * np.sqrt(ensemble_weights)[None, :])
    u, _, vh = np.linalg.svd(gram, full_matrices=False)
    return vh.conj().T @ u.conj().T


def _random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    g = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    q, _ = np.linalg.qr(g)
    return q


def _solve_restart(lam, vec, dims, s, rng, tol, max_iterations) -> _Outcome:
    r = lam.size
    sqlam = np.sqrt(lam)
    iso = _random_isometry(rng, s, r)
    bipartite = len(dims) == 2
    warm = None
    trace: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        rows = (iso * sqlam) @ vec.T
        p = (np.abs(rows) ** 2).sum(axis=1)
        if bipartite:
            pf, phi, factors = _products_bipartite(rows, *dims)
        else:
            pf, phi, factors = _products_multipartite(
                rows, p, dims, warm, rng, INNER_RESTARTS
            )
            warm = factors
        objective = float(pf.sum())
        trace.append(objective)
        if len(trace) > 1 and objective - trace[-2] < tol:
            converged = True
            break
        iso = _polar_isometry_step(sqlam, vec, phi, pf / objective)
    slot_fid = np.divide(pf, p, out=np.zeros_like(pf), where=p > ZERO_WEIGHT)
    return _Outcome(p, rows, slot_fid, factors, objective, trace, iterations, converged)


def _reevaluate_multipartite(out: _Outcome, dims, rng) -> None:
    """Re-run the per-element product search at the standalone restart
    budget, keeping the current factors as a warm start so the objective
    can only move up."""
    budget = 32 if len(dims) >= 4 else 16
    pf, _, factors = _products_multipartite(
        out.rows, out.weights, dims, out.factors, rng, budget
    )
    out.factors = factors
    out.slot_fid = np.divide(
        pf, out.weights, out=np.zeros_like(pf), where=out.weights > ZERO_WEIGHT
    )
    out.objective = float(pf.sum())


def _run_restarts(rho: DensityMatrix, s, restarts, seed, tol):
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    lam, vec = _eigs_descending(rho)
    r = lam.size
    if s is None:
        s = rho.dim**2
    if s < r:
        raise ValueError(f"decomposition size {s} is below the state rank {r}")
    outcomes = []
    for ridx in range(restarts):
        rng = np.random.default_rng([seed, ridx])
        outcomes.append(_solve_restart(lam, vec, rho.dims, s, rng, tol, MAX_ITERATIONS))
    return outcomes


def _pruned(out: _Outcome, dims):
    keep = np.flatnonzero(out.weights > ZERO_WEIGHT)
    w = out.weights[keep]
    w = w / w.sum()
    states = tuple(
        PureState(dims, out.rows[k] / np.sqrt(out.weights[k])) for k in keep
    )
    products = tuple(ProductVector(out.factors[k]) for k in keep)
    return w, states, products, out.slot_fid[keep]


def solve_roof(
    rho: DensityMatrix,
    s: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    tol: float = OBJECTIVE_TOL,
) -> RoofResult:
    """Maximize sum_i p_i F_s(psi_i) over pure-state decompositions of rho.

    Parameters
    ----------
    rho : state to decompose
    s : decomposition size; defaults to dim^2, which is always enough
        slots for an optimal decomposition
    restarts : independent seeded starts, merged by best final objective
    seed : base seed; restart k draws from generator (seed, k)
    tol : stop once the objective gain per iteration falls below this

    Returns a RoofResult whose ensemble assembles the closest separable
    state found and whose objective trace is non-decreasing.
    """
    outcomes = _run_restarts(rho, s, restarts, seed, tol)
    objectives = [out.objective for out in outcomes]
    best = int(np.argmax(objectives))
    out = outcomes[best]
    if len(rho.dims) > 2:
        _reevaluate_multipartite(out, rho.dims, np.random.default_rng([seed, best, 1]))
    w, states, products, fvals = _pruned(out, rho.dims)
    f_s = float(w @ fvals)
    decomposition = Decomposition(w, states)
    q = w * fvals
    ensemble = SeparableEnsemble(q / q.sum(), products)
    residual = stationarity_residual(decomposition, products)
    trace = tuple(out.trace) + (f_s,)
    return RoofResult(
        f_s=f_s,
        e_g=1.0 - f_s,
        decomposition=decomposition,
        ensemble=ensemble,
        stationarity_residual=residual,
        objective_trace=trace,
        seed=seed,
        iterations=out.iterations,
        converged=out.converged,
    )


def closest_separable_from(
    decomposition: Decomposition, restarts: int | None = None, seed: int = 0
) -> SeparableEnsemble:
    """Separable ensemble induced by a decomposition: each element's
    closest product vector, weighted by p_i F_s(psi_i) renormalized."""
    dims = decomposition.dims
    products = []
    fvals = []
    for psi in decomposition.states:
        if len(dims) == 2:
            res = fs_pure_bipartite(psi)
        else:
            res = fs_pure_multipartite(psi, restarts=restarts, seed=seed)
        products.append(res.product)
        fvals.append(res.f_s)
    q = decomposition.weights * np.array(fvals)
    return SeparableEnsemble(q / q.sum(), tuple(products))


def align_decomposition(rho: DensityMatrix, ensemble: SeparableEnsemble) -> Decomposition:
    """Decomposition of rho whose purification best overlaps the ensemble's,
    via a single closed-form alignment of the ancilla isometry."""
    lam, vec = _eigs_descending(rho)
    phi = np.array([pv.vector() for pv in ensemble.vectors])
    iso = _polar_isometry_step(np.sqrt(lam), vec, phi, np.asarray(ensemble.weights))
    rows = (iso * np.sqrt(lam)) @ vec.T
    p = (np.abs(rows) ** 2).sum(axis=1)
    keep = np.flatnonzero(p > ZERO_WEIGHT)
    states = tuple(PureState(rho.dims, rows[k] / np.sqrt(p[k])) for k in keep)
    return Decomposition(p[keep] / p[keep].sum(), states)


def stationarity_residual(
    decomposition: Decomposition, closest_products: Sequence[ProductVector]
) -> float:
    """Largest violation of the pairwise overlap relations that every
    optimal decomposition satisfies (necessary, not sufficient).

    Each product vector is phase-aligned so its overlap with its own
    element is real nonnegative before the cross terms are compared.
    """
    states = decomposition.states
    if len(closest_products) != len(states):
        raise ValueError(
            f"{len(states)} states but {len(closest_products)} product vectors"
        )
    psi = np.array([st.amplitudes for st in states])
    phi = np.array([pv.vector() for pv in closest_products])
    own = np.einsum("kd,kd->k", phi.conj(), psi)
    mags = np.abs(own)
    phase = np.ones_like(own)
    nz = mags > 0
    phase[nz] = own[nz] / mags[nz]
    phi = phi * phase[:, None]
    root_f = mags
    cross = psi.conj() @ phi.T
    lhs = root_f[None, :] * cross
    rhs = root_f[:, None] * cross.conj().T
    return float(np.abs(lhs - rhs).max())


def two_qubit_schmidt_uniformity(decomposition: Decomposition) -> float:
    """Spread of pure-state concurrences across a two-qubit decomposition;
    an optimal decomposition has all elements equally entangled."""
    if decomposition.dims != (2, 2):
        raise ValueError(f"requires two-qubit states, got dims {decomposition.dims}")
    conc = [
        2.0 * abs(np.linalg.det(st.amplitudes.reshape(2, 2)))
        for st in decomposition.states
    ]
    return float(max(conc) - min(conc))


def solve_generalized_roof(
    rho: DensityMatrix,
    f: Callable[[float], float],
    s: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> float:
    """Minimize sum_i p_i f(E_G(psi_i)) over decompositions for a convex
    nonnegative f with f(0) = 0.

    Runs the same decomposition search and evaluates the transformed
    objective on every restart's final decomposition, returning the
    smallest value. For two qubits this equals f applied to the geometric
    measure of rho, because the optimal decomposition has all elements
    equally entangled.
    """
    if abs(f(0.0)) > 1e-9:
        raise ValueError(f"f(0) must vanish, got {f(0.0)!r}")
    for x in (0.125, 0.25, 0.5):
        if f(x) < -1e-12:
            raise ValueError(f"f must be nonnegative on [0, 1/2], f({x}) < 0")
    outcomes = _run_restarts(rho, s, restarts, seed, OBJECTIVE_TOL)
    best = np.inf
    for out in outcomes:
        keep = out.weights > ZERO_WEIGHT
        w = out.weights[keep] / out.weights[keep].sum()
        value = float(sum(wi * f(1.0 - fi) for wi, fi in zip(w, out.slot_fid[keep])))
        best = min(best, value)
    return best


def convex_set_fidelity(
    rho: DensityMatrix,
    xset: ConvexSetSpec,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    tol: float = OBJECTIVE_TOL,
) -> ConvexSetResult:
    """Maximize sum_i p_i F_X(rho_i) over decompositions of rho into mixed
    parts, where F_X is the best fidelity against the extreme points.

    One part per extreme point suffices: merging two parts matched to the
    same point never lowers the objective, by concavity of fidelity. Each
    part rho_k is represented through a purification slice R Y_k of the
    spectral root of rho, and the same two-step alternation as the roof
    solver applies: a trace-norm evaluation per part, then a joint polar
    update of the stacked ancilla co-isometry.
    """
    points = xset.extreme_points
    if xset.dim != rho.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {xset.dim}")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    kcount = len(points)
    lam, vec = _eigs_descending(rho)
    r = lam.size
    root = vec * np.sqrt(lam)
    cross = []
    for sigma in points:
        mu, vs = _eigs_descending(sigma)
        cross.append((vs * np.sqrt(mu)).conj().T @ root)
    best = None
    for ridx in range(restarts):
        rng = np.random.default_rng([seed, ridx, 2])
        y = _random_isometry(rng, kcount * r, r).conj().T
        trace: list[float] = []
        converged = False
        nucs = np.zeros(kcount)
        for _ in range(MAX_ITERATIONS):
            blocks = []
            for k in range(kcount):
                a = cross[k] @ y[:, k * r : (k + 1) * r]
                u, sv, vh = np.linalg.svd(a, full_matrices=False)
                nucs[k] = sv.sum()
                blocks.append(vh.conj().T @ u.conj().T @ cross[k])
            objective = float((nucs**2).sum())
            trace.append(objective)
            if len(trace) > 1 and objective - trace[-2] < tol:
                converged = True
                break
            omega = nucs / np.sqrt(objective)
            stacked = np.vstack([omega[k] * blocks[k] for k in range(kcount)])
            u, _, vh = np.linalg.svd(stacked, full_matrices=False)
            y = vh.conj().T @ u.conj().T
        if best is None or trace[-1] > best[0]:
            best = (trace[-1], y, trace, converged)
    _, y, trace, converged = best
    # the isometry may have moved past the last recorded objective when the
    # iteration cap was hit, so evaluate the returned quantities from y itself
    nucs = np.array(
        [
            np.linalg.svd(cross[k] @ y[:, k * r : (k + 1) * r], compute_uv=False).sum()
            for k in range(kcount)
        ]
    )
    f_c = float((nucs**2).sum())
    trace = list(trace)
    trace.append(f_c)
    slices = [root @ y[:, k * r : (k + 1) * r] for k in range(kcount)]
    weights = np.array([float((np.abs(t) ** 2).sum()) for t in slices])
    keep = np.flatnonzero(weights > ZERO_WEIGHT)
    members = tuple(
        DensityMatrix(
            rho.dims,
            (slices[k] @ slices[k].conj().T + (slices[k] @ slices[k].conj().T).conj().T)
            / (2 * weights[k]),
        )
        for k in keep
    )
    set_weights = nucs**2 / f_c
    return ConvexSetResult(
        f_c=float(f_c),
        weights=weights[keep] / weights[keep].sum(),
        members=members,
        set_weights=set_weights,
        objective_trace=tuple(trace),
        converged=converged,
    )
