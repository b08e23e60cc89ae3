"""Dense complex linear algebra for small state spaces.

Thin wrappers around LAPACK-backed routines carrying the validation and
determinism guarantees the rest of the package relies on: symmetrized
Hermitian eigendecompositions, PSD square roots with an explicit negative
eigenvalue policy, tensor-structure helpers, and seeded Haar sampling.
"""
from __future__ import annotations

import string
from typing import NamedTuple, Sequence

import numpy as np

HERMITIAN_TOL = 1e-9
PSD_FLOOR = -1e-10


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(m: np.ndarray) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    deviation = np.abs(m - m.conj().T).max() if m.size else 0.0
    if deviation > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian: max|M - M^dag| = {deviation:.3e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return HermitianEig(w, v)


def sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues below numerical resolution are zeroed before the square
    root: they carry no information, and square-rooting their noise would
    turn exact rank deficiency into spurious sqrt(eps)-sized modes.
    """
    w, v = eig_hermitian(m)
    if w.size and w[0] < PSD_FLOOR:
        raise ValueError(f"matrix is not positive semidefinite: min eigenvalue {w[0]:.3e}")
    resolution = max(float(w[-1]), 0.0) * w.size * np.finfo(float).eps if w.size else 0.0
    root = (v * np.sqrt(np.where(w > resolution, w, 0.0))) @ v.conj().T
    return (root + root.conj().T) / 2


def svd(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition M = U diag(s) V^dag with s descending."""
    u, s, vh = np.linalg.svd(np.asarray(m, dtype=complex))
    return u, s, vh.conj().T


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices (or vectors)."""
    return np.kron(a, b)


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every party not listed in ``keep``, preserving party order.

    Parameters
    ----------
    m : square matrix over the full tensor-product space
    dims : dimension of each party; their product must match ``m``
    keep : indices of the parties to retain (order-insensitive)
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    d_total = int(np.prod(dims)) if dims else 1
    m = np.asarray(m, dtype=complex)
    if m.shape != (d_total, d_total):
        raise ValueError(f"dims {dims} imply shape {(d_total, d_total)}, got {m.shape}")
    kept = sorted(set(int(k) for k in keep))
    if kept and not (0 <= kept[0] and kept[-1] < n):
        raise ValueError(f"keep indices {kept} out of range for {n} parties")
    letters = string.ascii_lowercase
    if 2 * n > len(letters):
        raise ValueError("too many parties")
    row = letters[:n]
    col = "".join(letters[n + j] if j in kept else letters[j] for j in range(n))
    out = "".join(letters[j] for j in kept) + "".join(letters[n + j] for j in kept)
    reduced = np.einsum(f"{row}{col}->{out}", m.reshape(dims + dims))
    d_keep = int(np.prod([dims[j] for j in kept])) if kept else 1
    return reduced.reshape(d_keep, d_keep)


def haar_random_unitary(dim: int, seed: int | Sequence[int]) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Ginibre sample.

    The R factor's diagonal phases are absorbed into Q, which makes the
    distribution exactly left-invariant rather than QR-convention biased.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    return q * (diag / np.abs(diag))


def random_density_matrix(dims: Sequence[int], rank: int, seed: int | Sequence[int]) -> np.ndarray:
    """Random density matrix of the requested rank (normalized Ginibre GG^dag)."""
    d = int(np.prod([int(x) for x in dims]))
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real
