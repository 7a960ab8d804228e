"""Periodicity residual of the annulus and wedge image sums as the truncation grows."""
import argparse

import mpmath

from goldencalc.hydroimages import FlowConfig, periodicity_residual


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z0", default="1.05+0.4j")
    ap.add_argument("--wedge-z0", default="0.8+0.8j")
    ap.add_argument("--z", default="0.6+0.8j")
    ap.add_argument("--precision", type=int, default=256)
    args = ap.parse_args()

    z = mpmath.mpc(complex(args.z))
    for flow, z0 in (("annulus", args.z0), ("wedge", args.wedge_z0)):
        print(flow)
        for N in (25, 50, 100, 200):
            cfg = FlowConfig(z0=mpmath.mpc(complex(z0)), truncation_N=N, precision_bits=args.precision)
            r = periodicity_residual(cfg, z, flow)
            print(f"  N={N:<4d} residual={mpmath.nstr(r.residual, 4):<12s} "
                  f"predicted={mpmath.nstr(r.predicted_scale, 4)}")


if __name__ == "__main__":
    main()
