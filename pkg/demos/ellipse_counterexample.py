"""Two motions of exterior domains that start from the same disk exterior.

The Joukowski family z + t/z keeps the conformal radius at 1 for every |t| < 1.
Stretching the unit circle affinely into an ellipse gives a radius that falls as
|t| grows, and log rad stops being harmonic in t. Run: python demos/ellipse_counterexample.py
"""
from confdisk.motion import builtin_motion, harmonicity_scan, log_radius

jouk = builtin_motion("joukowski")
aff = builtin_motion("affine_stretch", 512)

print(f"{'|t|':>5} {'joukowski':>10} {'affine':>10}")
for m in (0.0, 0.25, 0.5, 0.75):
    print(f"{m:5.2f} {jouk.radius(m):10.6f} {aff.radius(m):10.6f}")

for name, M in (("joukowski", jouk), ("affine", aff)):
    scan = harmonicity_scan(log_radius(M), [0j], [0.25, 0.5])
    print(f"{name}: mean-value residual of log rad on circles about 0 = {scan.max_residual:.2e}")
