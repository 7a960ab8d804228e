"""Run the generating-function identity battery over several orders and report the worst residual."""
import argparse

import mpmath

from goldencalc.series import identity_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", default="1,2,3,4,5,-1,-2")
    ap.add_argument("--precision", type=int, default=256)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    for k in (int(t) for t in args.orders.split(",")):
        reports = identity_suite(k, args.precision)
        worst = max(reports, key=lambda r: r.residual)
        print(f"k={k:<3d} items={len(reports)} worst={worst.identity_id:<8s} "
              f"residual={mpmath.nstr(worst.residual, 5)}")
        if args.verbose:
            for r in reports:
                print("   ", r.to_json())


if __name__ == "__main__":
    main()
