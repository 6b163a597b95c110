"""Alternating stocking: the 2-cycle, shortcut rules, artificial cycles.

With a period-2 schedule the equilibrium is replaced by a 2-cycle (even terms
settle on z0, odd terms on z1).  Stability comes from the Jury test on the
composed Jacobian; global stability again comes from the embedding, and fails
exactly when the folded embedded map picks up extra ("artificial") fixed
points, which then bound the even and odd tails instead.
"""
from ricker_lab import (
    ModelParams,
    certify_periodic,
    corollary_shortcuts,
    find_artificial_cycles,
    solve_two_cycle,
)

# --- a certified globally stable 2-cycle ------------------------------------
params = ModelParams.two_periodic(1.0, 2.0, 1.5)
rep = solve_two_cycle(params)
print(f"(r=1, h=(2, 1.5)): z0={rep.z0:.4f} z1={rep.z1:.4f}")
print(f"  trace={rep.trace:.4f} det={rep.det:.4f} -> {rep.local_verdict.value}")
print("  shortcut rules fired:", corollary_shortcuts(rep, params))
v = certify_periodic(params)
print(f"  certificate: {v.tag.value}, witness corners {tuple(round(c, 3) for c in v.witness)}")

# --- artificial cycles block the certificate --------------------------------
params2 = ModelParams.two_periodic(1.0, 2.0, 1.0)
art = find_artificial_cycles(params2)
print(f"\n(r=1, h=(2, 1)): {art.count} artificial cycles at scan {art.grid}x{art.grid}")
for q in art.cycles:
    print("  quadruple:", tuple(round(c, 4) for c in q))
v2 = certify_periodic(params2)
print(f"  certificate: {v2.tag.value}")
print(f"  even terms eventually in [{v2.even_range[0]:.4f}, {v2.even_range[1]:.4f}]")
print(f"  odd terms eventually in  [{v2.odd_range[0]:.4f}, {v2.odd_range[1]:.4f}]")

# --- an unstable 2-cycle: determinant alone does not decide -----------------
params3 = ModelParams.two_periodic(3.0, 2.0, 6.444)
rep3 = solve_two_cycle(params3)
print(f"\n(r=3, h=(2, 6.444)): z0={rep3.z0:.4f} z1={rep3.z1:.4f}")
print(f"  det={rep3.det:.4f} < 1 yet eigenvalues {rep3.eigenvalues[0].real:.4f}, "
      f"{rep3.eigenvalues[1].real:.4f} -> {rep3.local_verdict.value}")
print("  (a flip eigenvalue below -1; orbits settle on a 4-cycle instead)")

# --- inapplicable region -----------------------------------------------------
params4 = ModelParams.two_periodic(1.5, 0.820, 1.800)
v4 = certify_periodic(params4)
print(f"\n(r=1.5, h=(0.82, 1.8)): {v4.tag.value} -- {v4.provenance}")
