"""
Density-matrix files and reproducible sweeps
============================================

States can be written to a plain text format and read back, and parameter
sweeps produce CSV tables that are byte-identical across runs.
"""

import io
import tempfile
from pathlib import Path

from qcorr import compute_G, load_density, save_density, sigma_p
from qcorr.sweep import SweepSpec, run_sweep, write_csv

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "sigma.dm"
    save_density(sigma_p(0.4), path, comment="sigma(p) at p=0.4")
    print(path.read_text().splitlines()[0:3])
    rho = load_density(path)
    print("G from file:", compute_G(rho).value)

spec = SweepSpec("sigma_p", 0.0, 0.5, 0.05, ("G", "negativity_max"))
out = io.StringIO()
write_csv(run_sweep(spec), spec.columns(), out)
print(out.getvalue())

# same thing from the shell:
#   qcorr sweep --family sigma_p --measures G,negativity --step 0.05 --out sigma.csv
