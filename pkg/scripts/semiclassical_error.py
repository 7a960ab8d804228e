"""Error of the truncated Bernoulli expansion against the exact even-order spectrum."""
import argparse

import mpmath

from goldencalc.oscillator import bosonic_spectrum, semiclassical_energy


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--levels", type=int, default=10)
    ap.add_argument("--terms", default="4,8,12,24,48")
    args = ap.parse_args()

    terms = [int(t) for t in args.terms.split(",")]
    exact = bosonic_spectrum(args.k, args.levels)
    print("n    " + "".join(f"S={S:<10d}" for S in terms))
    for n in range(args.levels + 1):
        errs = [abs(semiclassical_energy(args.k, n, S, 256) - exact[n].energy_halfquanta) for S in terms]
        print(f"{n:<4d} " + "".join(f"{mpmath.nstr(e, 3):<12s}" for e in errs))


if __name__ == "__main__":
    main()
