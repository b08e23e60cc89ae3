"""Validated quantum-state data model.

Density matrices, pure states, product vectors, pure-state decompositions
and separable ensembles, plus the purification and decomposition machinery
that connects them. All types are immutable after construction and carry
fixed validation tolerances so that "valid state" means one thing across
the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from . import linalg

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
NORM_TOL = 1e-10
WEIGHT_SUM_TOL = 1e-10
PSD_FLOOR = -1e-10
ZERO_WEIGHT = 1e-12
RANK_CUTOFF = 1e-12


class StateValidationError(ValueError):
    """An input violates one of the state invariants; the message names it."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one positive semidefinite matrix with a party-dimension signature."""

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise StateValidationError(f"party dimensions must each be >= 2, got {dims}")
        mat = np.array(self.matrix, dtype=complex)
        d = prod(dims)
        if mat.shape != (d, d):
            raise StateValidationError(
                f"dimension mismatch: dims {dims} imply a {d}x{d} matrix, got {mat.shape}"
            )
        if not np.isfinite(mat).all():
            raise StateValidationError("matrix contains non-finite entries")
        herm = np.abs(mat - mat.conj().T).max()
        if herm > HERMITIAN_TOL:
            raise StateValidationError(f"matrix is not Hermitian: max|M - M^dag| = {herm:.3e}")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateValidationError(f"trace must be 1, got {tr.real:.12g}")
        floor = np.linalg.eigvalsh((mat + mat.conj().T) / 2)[0]
        if floor < PSD_FLOOR:
            raise StateValidationError(
                f"matrix is not positive semidefinite: min eigenvalue {floor:.3e}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def rank(self, cutoff: float = RANK_CUTOFF) -> int:
        return int(np.sum(np.linalg.eigvalsh(self.matrix) > cutoff))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector with a party-dimension signature.

    The global phase is canonicalized at construction: the first amplitude
    larger than the rank cutoff is rotated to the nonnegative real axis, so
    equal states serialize identically.
    """

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise StateValidationError(f"party dimensions must each be >= 1, got {dims}")
        vec = np.array(self.amplitudes, dtype=complex).reshape(-1)
        d = prod(dims)
        if vec.size != d:
            raise StateValidationError(
                f"dimension mismatch: dims {dims} imply {d} amplitudes, got {vec.size}"
            )
        if not np.isfinite(vec).all():
            raise StateValidationError("amplitudes contain non-finite entries")
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > NORM_TOL:
            raise StateValidationError(f"norm must be 1, got {norm:.12g}")
        lead = np.flatnonzero(np.abs(vec) > RANK_CUTOFF)
        if lead.size:
            phase = vec[lead[0]] / abs(vec[lead[0]])
            vec = vec * phase.conjugate()
        vec.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", vec)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class ProductVector:
    """One normalized vector per party; the tensor product is its state."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        factors = []
        for j, f in enumerate(self.factors):
            vec = np.array(f, dtype=complex).reshape(-1)
            if vec.size < 1:
                raise StateValidationError(f"factor {j} is empty")
            norm = np.linalg.norm(vec)
            if abs(norm - 1.0) > NORM_TOL:
                raise StateValidationError(f"factor {j} norm must be 1, got {norm:.12g}")
            vec.setflags(write=False)
            factors.append(vec)
        object.__setattr__(self, "factors", tuple(factors))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.size for f in self.factors)

    def vector(self) -> np.ndarray:
        out = self.factors[0]
        for f in self.factors[1:]:
            out = np.kron(out, f)
        return out

    def pure_state(self) -> PureState:
        return PureState(self.dims, self.vector())


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Weighted pure states representing rho = sum_i p_i |psi_i><psi_i|."""

    weights: np.ndarray
    states: tuple[PureState, ...]

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        states = tuple(self.states)
        if w.size == 0 or w.size != len(states):
            raise StateValidationError(
                f"got {w.size} weights for {len(states)} states"
            )
        if np.any(w <= 0):
            raise StateValidationError("weights must be strictly positive")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise StateValidationError(f"weights must sum to 1, got {w.sum():.12g}")
        dims = states[0].dims
        if any(s.dims != dims for s in states):
            raise StateValidationError("all states must share the same party dimensions")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", states)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.states[0].dims

    def __len__(self) -> int:
        return len(self.states)

    def reconstruct(self) -> DensityMatrix:
        mat = np.zeros((self.states[0].dim,) * 2, dtype=complex)
        for p, psi in zip(self.weights, self.states):
            mat += p * psi.projector()
        return DensityMatrix(self.dims, (mat + mat.conj().T) / 2)


@dataclass(frozen=True, eq=False)
class SeparableEnsemble:
    """Weighted product vectors representing a separable sigma."""

    weights: np.ndarray
    vectors: tuple[ProductVector, ...]

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        vectors = tuple(self.vectors)
        if w.size == 0 or w.size != len(vectors):
            raise StateValidationError(
                f"got {w.size} weights for {len(vectors)} product vectors"
            )
        if np.any(w <= 0):
            raise StateValidationError("weights must be strictly positive")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise StateValidationError(f"weights must sum to 1, got {w.sum():.12g}")
        dims = vectors[0].dims
        if any(v.dims != dims for v in vectors):
            raise StateValidationError("all product vectors must share the same party dimensions")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "vectors", vectors)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.vectors[0].dims

    def __len__(self) -> int:
        return len(self.vectors)


def _eigs_descending(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    w, v = linalg.eig_hermitian(rho.matrix)
    keep = w > RANK_CUTOFF
    return w[keep][::-1], v[:, keep][:, ::-1]


def purify(rho: DensityMatrix) -> PureState:
    """Pure state on system x ancilla whose ancilla trace gives back rho.

    The ancilla dimension equals the rank of rho; the state is the spectral
    purification sum_l sqrt(lambda_l) |lambda_l> |l> with eigenvalues taken
    in descending order.
    """
    lam, vec = _eigs_descending(rho)
    r = lam.size
    amps = (vec * np.sqrt(lam)).reshape(-1)
    return PureState(rho.dims + (r,), amps)


def decomposition_from_unitary(rho: DensityMatrix, u: np.ndarray) -> Decomposition:
    """Pure-state decomposition of rho selected by a unitary on the ancilla.

    Row k of the unitary mixes the scaled eigenvectors of rho into the
    subnormalized vector sqrt(p_k)|psi_k>; every decomposition of rho with
    at most s elements arises this way from an s x s unitary. Entries with
    weight below the pruning threshold are dropped.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise StateValidationError(f"expected a square unitary, got shape {u.shape}")
    s = u.shape[0]
    defect = np.abs(u.conj().T @ u - np.eye(s)).max()
    if defect > HERMITIAN_TOL:
        raise StateValidationError(f"matrix is not unitary: max|U^dag U - I| = {defect:.3e}")
    lam, vec = _eigs_descending(rho)
    r = lam.size
    if s < r:
        raise StateValidationError(f"unitary size {s} is below the state rank {r}")
    rows = (u[:, :r] * np.sqrt(lam)) @ vec.T
    p = np.sum(np.abs(rows) ** 2, axis=1)
    keep = p > ZERO_WEIGHT
    states = tuple(
        PureState(rho.dims, rows[k] / np.sqrt(p[k])) for k in np.flatnonzero(keep)
    )
    return Decomposition(p[keep] / p[keep].sum(), states)


def assemble(ensemble: SeparableEnsemble) -> DensityMatrix:
    """Density matrix of the ensemble, separable by construction."""
    vecs = np.array([pv.vector() for pv in ensemble.vectors])
    mat = (vecs.T * ensemble.weights) @ vecs.conj()
    return DensityMatrix(ensemble.dims, (mat + mat.conj().T) / 2)


def bell_state(kind: str = "phi+") -> PureState:
    """One of the four Bell states on two qubits."""
    table = {
        "phi+": [1, 0, 0, 1],
        "phi-": [1, 0, 0, -1],
        "psi+": [0, 1, 1, 0],
        "psi-": [0, 1, -1, 0],
    }
    if kind not in table:
        raise ValueError(f"unknown Bell state {kind!r}")
    return PureState((2, 2), np.array(table[kind], dtype=complex) / np.sqrt(2))


def ghz_state(n: int = 3) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if n < 2:
        raise ValueError("need at least 2 parties")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return PureState((2,) * n, amps)


def w_state(n: int = 3) -> PureState:
    """Equal superposition of all single-excitation basis states on n qubits."""
    if n < 2:
        raise ValueError("need at least 2 parties")
    amps = np.zeros(2**n, dtype=complex)
    for j in range(n):
        amps[1 << j] = 1 / np.sqrt(n)
    return PureState((2,) * n, amps)


def gvp_state(a: float, p: float) -> DensityMatrix:
    """Two-qubit mixture p |psi><psi| + (1-p) |01><01| with
    |psi> = sqrt(a)|01> + sqrt(1-a)|10>."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    psi = np.zeros(4, dtype=complex)
    psi[1] = np.sqrt(a)
    psi[2] = np.sqrt(1.0 - a)
    mat = p * np.outer(psi, psi.conj())
    mat[1, 1] += 1.0 - p
    return DensityMatrix((2, 2), mat)


def gvp_closest_separable(a: float, p: float) -> DensityMatrix:
    """Known relative-entropy minimizer for the gvp family:
    (1 - p + pa)|01><01| + p(1 - a)|10><10|."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    mat = np.zeros((4, 4), dtype=complex)
    mat[1, 1] = 1.0 - p + p * a
    mat[2, 2] = p * (1.0 - a)
    return DensityMatrix((2, 2), mat)
