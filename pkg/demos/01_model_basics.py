"""Model basics: the delayed map, stocking schedules, and coarse bounds.

The recurrence is x_{n+1} = x_n * e^{r - x_{n-1}} + h_n.  Growth is damped by
the population one generation back (the delay), and h_n adds a constant or
periodic replenishment.
"""
import math

import numpy as np

from ricker_lab import ModelParams, density_f, simulate, step, vector_step

# --- parameters -----------------------------------------------------------
# A schedule is normalized to its minimal period, so (3, 3) is constant.
const = ModelParams.constant(2.0, 3.0)
alt = ModelParams.two_periodic(1.0, 2.0, 1.5)
print("constant:", const)
print("alternating:", alt)
print("normalized (3,3):", ModelParams(r=2.0, stocking=(3.0, 3.0)))

# --- the density factor ----------------------------------------------------
# e^{r-t} crosses 1 exactly at t = r: below r the population grows, above it
# the delayed crowding term suppresses growth.
for t in (1.0, 2.0, 3.0):
    print(f"density_f({t}, r=2) = {density_f(t, 2.0):.6f}")

# --- stepping --------------------------------------------------------------
print("one step from (x, x_prev) = (1.0, 0.2):", step(1.0, 0.2, const))
print("vector form:", vector_step((1.0, 0.2), const))
# every generated term exceeds the stocking it received
orbit = simulate(alt, 0.5, 0.5, 12)
print("first orbit terms:", np.round(orbit, 4))

# --- coarse trapping bound ---------------------------------------------
# Two steps ahead the orbit is below (e^r + h_n) e^r + h_{n+1}, which is what
# makes the long-run analysis live on a compact set.
r, (h0, h1) = alt.r, alt.stocking
er = math.exp(r)
print("even-step bound:", (er + h0) * er + h1)
print("max of a long orbit:", simulate(alt, 0.5, 0.5, 5000).max())
