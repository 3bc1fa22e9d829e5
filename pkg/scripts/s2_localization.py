"""Localization on the round sphere against direct quadrature.

Prints the exact symplectic-power integrals and a table comparing the
fixed-point DH sum with Gauss-Legendre quadrature of exp(i t z).
"""

import argparse
import math

import numpy as np

from equiloc.localize import IntegrandSpec, bv_localize, dh_localize, localization_sum
from equiloc.models import s2
from equiloc.oracle import QuadratureGrid, sphere_integral


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-lat", type=int, default=64)
    ap.add_argument("--ts", default="0.5,1,2,5,10")
    args = ap.parse_args()

    m = s2()
    for k in range(4):
        spec = IntegrandSpec.sympower(k)
        print(f"k={k}: sum={localization_sum(m, spec)}  integral={bv_localize(m, spec)}")

    grid = QuadratureGrid(args.n_lat, 8)
    dh = dh_localize(m)
    print(f"\n{'t':>6} {'fixed points':>22} {'quadrature':>22} {'gap':>9}")
    for t in map(float, args.ts.split(",")):
        loc = dh.exp_eval([t])
        quad = sphere_integral(lambda x, y, z: np.exp(1j * t * z), grid)
        print(f"{t:6.2f} {loc.real:22.15f} {quad.real:22.15f} {abs(loc - quad):9.1e}")
    print(f"\n4*pi = {4 * math.pi:.15f}")


if __name__ == "__main__":
    main()
