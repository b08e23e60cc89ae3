"""Deterministic CSV emitters for the two figure families.

Both grids step by 0.001 over [0, 1] and every float is rendered with
repr-shortest formatting, so a rerun with the same arguments writes a
byte-identical file.
"""
from __future__ import annotations

import numpy as np

from .measures import (
    entanglement_of_formation_2q,
    er_lower_bound,
    geometric_measure_2q,
    relative_entropy,
)
from .states import gvp_closest_separable, gvp_state

GRID_POINTS = 1001

BURES_HEADER = ("C", "E_G/(1/2)", "E_B/(2−√2)", "E_Gr/(1/√2)")
GVP_HEADER = ("a", "E_F", "E_R", "ℰ")

# normalization constants, written the same way the curves compute the
# C = 1 endpoint so the normalized values land on 1.0 exactly
_EG_MAX = 0.5
_EB_MAX = 2.0 - 2.0 * np.sqrt(0.5)
_EGR_MAX = np.sqrt(0.5)


def _fmt(x: float) -> str:
    return repr(float(x))


def bures_curve_rows() -> list[tuple[float, float, float, float]]:
    """Normalized geometric, Bures, and Groverian measures as functions of
    concurrence, all coinciding curves after normalization to [0, 1]."""
    rows = []
    for c in np.linspace(0.0, 1.0, GRID_POINTS):
        e_g = 0.5 * (1.0 - np.sqrt(1.0 - c * c))
        f_s = 1.0 - e_g
        e_b = 2.0 - 2.0 * np.sqrt(f_s)
        e_gr = np.sqrt(1.0 - f_s)
        rows.append((float(c), e_g / _EG_MAX, e_b / _EB_MAX, e_gr / _EGR_MAX))
    return rows


def gvp_rows(p: float) -> list[tuple[float, float, float, float]]:
    """Entanglement of formation, relative entropy of entanglement, and the
    fidelity-based lower bound along the one-parameter family
    p |psi_a><psi_a| + (1-p) |01><01|."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p}")
    rows = []
    for a in np.linspace(0.0, 1.0, GRID_POINTS):
        rho = gvp_state(float(a), p)
        e_f = entanglement_of_formation_2q(rho)
        e_r = relative_entropy(rho, gvp_closest_separable(float(a), p))
        bound = er_lower_bound(rho, geometric_measure_2q(rho))
        rows.append((float(a), e_f, e_r, bound))
    return rows


def write_csv(path: str, header: tuple[str, ...], rows, comment: str | None = None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if comment is not None:
            fh.write(f"# {comment}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def write_bures_curve(path: str) -> None:
    write_csv(path, BURES_HEADER, bures_curve_rows())


def write_gvp(path: str, p: float) -> None:
    write_csv(
        path,
        GVP_HEADER,
        gvp_rows(p),
        comment="E_R is the relative entropy to the family's known closest separable state",
    )
