"""Certification under constant stocking: four regimes in the (h, r) plane.

Below r2: the embedded map has a unique fixed point and a compatible box can
be grown around any initial condition, so the equilibrium attracts globally.
Between r2 and h: pseudo fixed points appear and only an absorbing box is
certified.  At or above h but below r1: locally stable, global status open.
Above r1: unstable.
"""
import numpy as np

from ricker_lab import ModelParams, certify_constant, find_intersections, simulate

CASES = [
    (1.8, 2.6, "global stability"),
    (2.0, 2.6, "absorbing box"),
    (1.2, 1.0, "open region"),
    (2.0, 0.7, "unstable"),
]

for r, h, label in CASES:
    v = certify_constant(ModelParams.constant(r, h))
    print(f"r={r}, h={h} ({label})")
    print(f"  tag: {v.tag.value}   local: {v.local.value}")
    print(f"  rule: {v.provenance}")
    if v.box:
        print(f"  box: [{v.box[0]:.4f}, {v.box[1]:.4f}]")
    if v.witness:
        print(f"  witness corners: ({v.witness[0]:.4f}, {v.witness[1]:.4f})")
    if v.note:
        print(f"  note: {v.note}")
    print()

# --- evidence for the absorbing box ----------------------------------------
params = ModelParams.constant(2.0, 2.6)
pts = find_intersections(params)
print("fixed-point curve intersections:", [(round(p.x, 4), round(p.y, 4)) for p in pts])
tail = simulate(params, 8.5, 0.3, 20000)[-2000:]
print(f"orbit tail range from a far start: [{tail.min():.4f}, {tail.max():.4f}]")

# --- the open region is reported as open even when orbits converge ---------
params_open = ModelParams.constant(1.2, 1.0)
tail = simulate(params_open, 5.0, 0.1, 30000)[-10:]
print("\nopen-region orbit settles at", np.round(tail[-1], 6),
      "but the tag stays:", certify_constant(params_open).tag.value)
