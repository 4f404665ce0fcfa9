"""Curvature of the Simanca metric on the blow-up of C^2 along rays of growing radius."""

import numpy as np

from tyz.curvature import curvature_at, lu_coefficients_at
from tyz.potential import parse_potential

phi = parse_potential("norm2(z) + log(norm2(z))", 2)
print(f"{'|z|':>6} {'|R|^2':>14} {'expected':>14} {'|Ric|^2':>14} {'a1':>10} {'a2':>10}")
for rad in np.linspace(0.3, 3.0, 10):
    z = rad * np.array([np.cos(0.7), 1j * np.sin(0.7)])
    d = curvature_at(phi, list(z))
    a1, a2 = lu_coefficients_at(d)
    print(f"{rad:6.2f} {d.norm_R_sq:14.8e} {8 / (1 + rad**2) ** 4:14.8e} {d.norm_Ric_sq:14.8e} {a1:10.1e} {a2:10.1e}")
