"""Orbit classification, unit-circle crossings, and figure-style data dumps.

classify_attractor labels long-run behavior (equilibrium, k-cycle, invariant
curve); neimark_sacker_scan brackets the growth rate where the leading
eigenvalue pair leaves the unit circle.  The CLI writes the same data as CSV
for plotting.
"""
import math

from ricker_lab import ModelParams, classify_attractor, neimark_sacker_scan
from ricker_lab.cli import main as cli_main

# --- attractor labels across regimes ----------------------------------------
for r, hs in [(0.5, (1.0,)), (1.0, (2.0, 1.5)), (3.0, (2.0, 6.444)), (1.5, (0.820, 1.800))]:
    params = ModelParams(r=r, stocking=hs)
    res = classify_attractor(params, 1.0, 1.0)
    desc = res.kind.value
    if res.period:
        desc += f"({res.period})"
    if res.points:
        desc += " " + str(tuple(round(p, 3) for p in sorted(res.points)))
    if res.value is not None:
        desc += f" at {res.value:.4f}"
    print(f"r={r}, h={hs}: {desc}")

# --- where stability is lost along r ----------------------------------------
rep = neimark_sacker_scan(lambda s: ModelParams.constant(s, 1.0), 1.0, 1.6)
print(f"\nconstant h=1: crossing at r = {rep.s_star:.8f} "
      f"(closed form {2.0 - math.log(2.0):.8f})")
rep2 = neimark_sacker_scan(lambda s: ModelParams.two_periodic(s, 0.820, 1.800), 1.2, 1.8)
print(f"alternating (0.82, 1.8): crossing at r = {rep2.s_star:.6f}; beyond it the "
      "2-cycle sheds two invariant curves acting as one attractor")

# --- CSV dumps for plotting --------------------------------------------------
# Orbit points just past the crossing: even/odd parity column separates the
# two curves.  The sweep maps verdict regions with the threshold curves
# alongside for overlay.
cli_main([
    "orbit", "--r", "1.5", "--h0", "0.82", "--h1", "1.8",
    "--x0", "1", "--xprev", "1", "--n", "4000", "--transient", "2000",
    "--out", "invariant_curves.csv",
])
cli_main([
    "sweep", "--mode", "constant",
    "--h-lo", "0.1", "--h-hi", "10", "--nh", "200",
    "--r-lo", "0.1", "--r-hi", "8", "--nr", "200",
    "--out", "stability_regions.csv",
])
print("\nwrote invariant_curves.csv, stability_regions.csv (+ .curves.csv overlay)")
