"""Closed-form and directly computable entanglement measures.

Uhlmann fidelity, von Neumann and relative entropy (both in bits), the
two-qubit concurrence and every two-qubit measure that is a closed-form
function of it, plus the entropic lower bound on the relative entropy of
entanglement. Everything here is exact arithmetic on spectra; the
optimization-based quantities live in :mod:`entfid.geometric` and
:mod:`entfid.roof`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import DensityMatrix

LOG_CUTOFF = 1e-12
SUPPORT_TOL = 1e-12
PURITY_SWITCH = 1e-11

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SY, _SY).real


@dataclass(frozen=True)
class MeasureReport:
    """Every measure the package can evaluate without running a solver.

    The concurrence-derived fields are populated only for two-qubit states;
    entropy is always present.
    """

    concurrence: float | None
    e_formation: float | None
    e_geometric: float | None
    e_bures: float | None
    e_groverian: float | None
    f_separability: float | None
    entropy: float
    er_lower_bound: float | None


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise ValueError(f"requires a two-qubit state, got party dimensions {rho.dims}")


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1].

    Evaluated as the squared nuclear norm of sqrt(sigma) sqrt(rho): its
    singular values are the square roots of the eigenvalues of the textbook
    matrix, and the SVD delivers the small ones with absolute rather than
    square-root-amplified error on rank-deficient inputs.
    """
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    ra = linalg.sqrt_psd(rho.matrix)
    rb = linalg.sqrt_psd(sigma.matrix)
    total = np.linalg.svd(rb @ ra, compute_uv=False).sum()
    return float(np.clip(total * total, 0.0, 1.0))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr[rho log2 rho] in bits."""
    w = linalg.eig_hermitian(rho.matrix).eigenvalues
    w = w[w > LOG_CUTOFF]
    return float(-(w * np.log2(w)).sum() + 0.0)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho||sigma) = Tr[rho log2 rho] - Tr[rho log2 sigma] in bits.

    Returns +inf when rho has support outside the support of sigma
    (eigenvalues at or below the cutoff count as zero).
    """
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    wr = linalg.eig_hermitian(rho.matrix).eigenvalues
    ws, vs = linalg.eig_hermitian(sigma.matrix)
    pos = wr[wr > LOG_CUTOFF]
    rho_term = float((pos * np.log2(pos)).sum())
    weight = np.einsum("ji,jk,ki->i", vs.conj(), rho.matrix, vs).real
    kernel = ws <= LOG_CUTOFF
    if weight[kernel].sum() > SUPPORT_TOL:
        return float("inf")
    sigma_term = float((weight[~kernel] * np.log2(ws[~kernel])).sum())
    return max(0.0, rho_term - sigma_term)


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence from the spin-flipped spectrum.

    The square roots of the eigenvalues of rho rho~ equal the singular
    values of sqrt(rho) (sy x sy) sqrt(rho)^T, so the SVD gives each xi_i
    directly, with no square-root blowup of near-zero eigenvalues on
    rank-deficient states.
    """
    _require_two_qubits(rho)
    root = linalg.sqrt_psd(rho.matrix)
    xi = np.linalg.svd(root @ _YY @ root.T, compute_uv=False)
    return float(np.clip(xi[0] - xi[1] - xi[2] - xi[3], 0.0, 1.0))


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), continuously extended at 0 and 1."""
    if not -1e-9 <= x <= 1.0 + 1e-9:
        raise ValueError(f"argument must lie in [0, 1], got {x}")
    total = 0.0
    for t in (x, 1.0 - x):
        if t > LOG_CUTOFF:
            total -= t * np.log2(t)
    return float(total + 0.0)


def entanglement_of_formation_2q(rho: DensityMatrix) -> float:
    """E_F = h(1/2 + sqrt(1 - C^2)/2) in bits, two qubits only."""
    c = concurrence(rho)
    return binary_entropy(0.5 + 0.5 * np.sqrt(max(0.0, 1.0 - c * c)))


def geometric_measure_2q(rho: DensityMatrix) -> float:
    """E_G = (1 - sqrt(1 - C^2))/2, two qubits only."""
    _require_two_qubits(rho)
    # near C = 1 the closed form amplifies concurrence roundoff by
    # 1/sqrt(1 - C^2); such states are necessarily almost pure, where the
    # Schmidt coefficient is exact, so switch routes there
    w, v = linalg.eig_hermitian(rho.matrix)
    if w[-1] >= 1.0 - PURITY_SWITCH:
        top = np.linalg.svd(v[:, -1].reshape(2, 2), compute_uv=False)[0]
        return float(np.clip(1.0 - top * top, 0.0, 0.5))
    c = concurrence(rho)
    return float(0.5 * (1.0 - np.sqrt(max(0.0, 1.0 - c * c))))


def fs_2q(rho: DensityMatrix) -> float:
    """Fidelity of separability (1 + sqrt(1 - C^2))/2, two qubits only."""
    return 1.0 - geometric_measure_2q(rho)


def bures_measure_2q(rho: DensityMatrix) -> float:
    """E_B = 2 - 2 sqrt(F_s), two qubits only."""
    return float(2.0 - 2.0 * np.sqrt(fs_2q(rho)))


def groverian_measure(rho: DensityMatrix, f_s: float) -> float:
    """E_Gr = sqrt(1 - f_s) for a separability fidelity computed elsewhere.

    The state argument is kept for interface symmetry; the value depends
    only on the supplied fidelity.
    """
    if not 0.0 < f_s <= 1.0 + 1e-12:
        raise ValueError(f"f_s must lie in (0, 1], got {f_s}")
    return float(np.sqrt(max(0.0, 1.0 - f_s)))


def er_lower_bound(rho: DensityMatrix, e_g: float) -> float:
    """Entropic lower bound max{0, -log2(1 - e_g) - S(rho)} on the relative
    entropy of entanglement."""
    if not 0.0 <= e_g < 1.0:
        raise ValueError(f"e_g must lie in [0, 1), got {e_g}")
    return float(max(0.0, -np.log2(1.0 - e_g) - von_neumann_entropy(rho)))


def report_all(rho: DensityMatrix) -> MeasureReport:
    """Evaluate every closed-form measure available for the state's shape."""
    entropy = von_neumann_entropy(rho)
    if rho.dims != (2, 2):
        return MeasureReport(
            concurrence=None,
            e_formation=None,
            e_geometric=None,
            e_bures=None,
            e_groverian=None,
            f_separability=None,
            entropy=entropy,
            er_lower_bound=None,
        )
    e_g = geometric_measure_2q(rho)
    f_s = fs_2q(rho)
    return MeasureReport(
        concurrence=concurrence(rho),
        e_formation=entanglement_of_formation_2q(rho),
        e_geometric=e_g,
        e_bures=bures_measure_2q(rho),
        e_groverian=groverian_measure(rho, f_s),
        f_separability=f_s,
        entropy=entropy,
        er_lower_bound=er_lower_bound(rho, e_g),
    )
