"""Harmonic measure on an arc slit splits unevenly between the two sides.

A radial slit with the same total slit mass has a symmetric split, so matching
the measures on the slit cannot also respect the two-sided structure. The check
below reports the split and the static fitness verdict. Run: python demos/slit_example.py
"""
from confdisk.domains import arc_slit_exterior, radial_slit_exterior, radial_slit_for_mass
from confdisk.measure import decompose, harmonic_measure, slit_measure_matching, static_fitness_check

for eps in (0.1, 0.05, 0.02):
    g = arc_slit_exterior(0.25, eps)
    d = decompose(harmonic_measure(g, 1024))
    bm, bp = d.beta_minus.mass, d.beta_plus.mass
    gt = radial_slit_exterior(radial_slit_for_mass(bm + bp))
    dt = decompose(harmonic_measure(gt, 1024))
    rep = static_fitness_check(g, gt, slit_measure_matching(g, gt, 8192), 1024)
    print(f"eps={eps:<5} arc slit sides {bm:.4f} / {bp:.4f}   "
          f"radial slit sides {dt.beta_minus.mass:.4f} / {dt.beta_plus.mass:.4f}   fit={rep.fit}")
