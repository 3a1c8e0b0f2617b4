"""Monte Carlo harmonic measure next to the conformal-map result.

Shells out to the CLI so the seeded, thread-independent run is the same one a
user would get. Run: python demos/walk_on_spheres.py
"""
import json
import subprocess
import sys
from pathlib import Path

scenes = Path(__file__).resolve().parents[1] / "scenes"
for name in ("unit_disk.json", "unit_disk_offset.json", "radial_slit.json"):
    out = subprocess.run([sys.executable, "-m", "confdisk.cli", "wos", "--scene", str(scenes / name),
                          "--n", "2048", "--seed", "0xC0FFEE", "--no-timing"],
                         capture_output=True, text=True, check=True).stdout
    res = json.loads(out)["results"]
    print(f"{name:24} KS distance to the conformal-map measure = {res['ks']:.4f}")
