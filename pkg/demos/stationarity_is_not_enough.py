#!/usr/bin/env python3
"""A stationary decomposition that is nowhere near optimal.

The solver's stopping criterion checks first-order stationarity of the
decomposition. This script exhibits why that alone cannot certify the
answer: an equal mixture of two Bell states is separable (f_s = 1), yet
its Bell decomposition passes the stationarity check exactly while its
objective is stuck at 1/2. Restarts, not the residual, are what protect
against this.
"""

from entfid import (
    Decomposition,
    bell_state,
    fs_pure_bipartite,
    solve_roof,
    stationarity_residual,
)
import numpy as np

dec = Decomposition(np.array([0.5, 0.5]), (bell_state("psi+"), bell_state("phi+")))
rho = dec.reconstruct()

products = [fs_pure_bipartite(psi).product for psi in dec.states]
objective = sum(w * fs_pure_bipartite(psi).f_s for w, psi in zip(dec.weights, dec.states))

print("state: equal mixture of |psi+> and |phi+>")
print(f"Bell-decomposition objective   = {objective:.12f}")
print(f"Bell-decomposition residual    = {stationarity_residual(dec, products):.2e}")

res = solve_roof(rho, seed=0)
print(f"\nsolver f_s                     = {res.f_s:.12f}")
print(f"solver residual                = {res.stationarity_residual:.2e}")
print(f"gap hidden from the residual   = {res.f_s - objective:.6f}")
