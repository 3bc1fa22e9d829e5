"""DH densities of the shipped circle models, compared with the sphere pushforward."""

import argparse

from equiloc.dhmeasure import density_fourier_check, dh_density
from equiloc.models import load_builtin_model
from equiloc.oracle import QuadratureGrid, pushforward_histogram


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bins", type=int, default=20)
    ap.add_argument("--n-lat", type=int, default=1000)
    args = ap.parse_args()

    for name in ("s2", "s2_double", "cp2_circle"):
        m = load_builtin_model(name)
        d = dh_density(m)
        print(f"{name}: {d.as_dict()}")
        print(f"  Fourier gap {density_fourier_check(d, m, [0.5, 1, 2, 5]):.1e}")

    d = dh_density(load_builtin_model("s2"))
    hist = pushforward_histogram(lambda x, y, z: z, QuadratureGrid(args.n_lat, 8), args.bins, (-1.0, 1.0))
    print("\nS2 pushforward through z: bin centre, histogram, exact")
    for c, h in zip(hist.centers, hist.density):
        print(f"{c:+.3f} {h:10.5f} {d(c):10.5f}")


if __name__ == "__main__":
    main()
