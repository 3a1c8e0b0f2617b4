"""Minimal logarithmic energy of the boundary against -log of the conformal radius.

The gap shrinks roughly by half each time the discretization doubles.
Run: python demos/energy_identity.py
"""
from confdisk.domains import disk_exterior, joukowski_exterior, segment_exterior
from confdisk.potential import check_energy_radius

for name, g in (("disk r=1", disk_exterior(1.0)), ("segment [-2,2]", segment_exterior()),
                ("ellipse z+0.5/z", joukowski_exterior(0.5))):
    row = [check_energy_radius(g, n) for n in (256, 512, 1024)]
    r = row[-1]
    print(f"{name:16} E={r.energy:+.6f}  -log rad={-r.log_rad + 0.0:+.6f}  "
          "gaps " + " ".join(f"{c.discrepancy:.1e}" for c in row))
