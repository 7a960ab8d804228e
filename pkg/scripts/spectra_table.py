"""Print bosonic and fermionic level tables (half-quanta) for a range of orders."""
import argparse

from goldencalc.oscillator import bosonic_spectrum, fermionic_spectrum, gap_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--levels", type=int, default=6)
    args = ap.parse_args()

    print("bosonic E_n, n = 0..%d" % args.levels)
    for k in range(1, args.kmax + 1):
        row = [e.energy_halfquanta for e in bosonic_spectrum(k, args.levels)]
        print(f"  k={k:<3d}", " ".join(str(v) for v in row))
    print("fermionic |E_n|, odd k")
    for k in range(1, args.kmax + 1, 2):
        row = [e.energy_halfquanta for e in fermionic_spectrum(k, args.levels, magnitude=True)]
        print(f"  k={k:<3d}", " ".join(str(v) for v in row))
    print("gap ratio at n = 40 vs phi^k - 1")
    for k in range(1, args.kmax + 1):
        print(f"  k={k:<3d} {gap_ratio(k, 40, 64)}")


if __name__ == "__main__":
    main()
