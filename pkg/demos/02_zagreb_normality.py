"""Zagreb-index moments and the failure of asymptotic normality.

Run:  python3 demos/02_zagreb_normality.py
"""

import numpy as np

from port_trees import (
    Kernel,
    VAR_Z_COEFFICIENT,
    grow_forest,
    jarque_bera,
    kde,
    moment_series,
    zagreb_mean,
)

print("Exact Zagreb moments (degree kernel), small n:")
series = moment_series(8, exact=True)
for n in range(2, 9):
    print(f"  n={n}  E[Z]={series.mean_z[n - 1]}  E[Z^2]={series.second_z[n - 1]}  Var={series.var_z(n)}")

print("\nVar[Z_n]/n^2 drifting toward 16 - 2*pi^2/3 =", f"{VAR_Z_COEFFICIENT:.4f}:")
for n in (100, 1000, 10_000):
    s = moment_series(n, exact=True)
    print(f"  n={n:>6d}  Var/n^2 = {float(s.var_z(n)) / n**2:.4f}")

print("\nMonte Carlo at n = 20000 (3000 replicates):")
res = grow_forest(20_000, 3000, Kernel.DEGREE, seed=7)
z = res.zagreb.astype(float)
print(f"  sample mean {z.mean():.1f}  vs exact {float(zagreb_mean(20_000)):.1f}")
c = z - z.mean()
skew = float(np.mean(c**3) / np.mean(c**2) ** 1.5)
jb, p = jarque_bera(z)
print(f"  skewness {skew:+.3f} (right-skewed), Jarque-Bera {jb:.1f}, p = {p:.2e}")
print("  => normality decisively rejected; the limit law is not Gaussian")

grid, dens = kde(z, grid_size=9)
print("\n  coarse KDE of the sample:")
for x, y in zip(grid, dens):
    print(f"    x={x:12.1f}  density={y:.3e}  {'#' * int(round(y / dens.max() * 40))}")
