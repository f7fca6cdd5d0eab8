"""Distance of the finite-chain u(N) purity from its thermodynamic limit.

    python3 scripts/finite_size.py --gamma 1 --g 0.3
"""

import argparse

from genent.fermions import purity_uN_finite, purity_uN_thermo
from genent.model import ChainParams


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--g", type=float, default=0.3)
    ap.add_argument("--sizes", default="4,8,16,32,64,128,256,512")
    args = ap.parse_args()

    exact = purity_uN_thermo(args.g, args.gamma)
    print("N,purity,abs_error")
    for n in (int(s) for s in args.sizes.split(",")):
        p = purity_uN_finite(ChainParams(n, args.g, args.gamma))
        print(f"{n},{p:.17g},{abs(p - exact):.3e}")


if __name__ == "__main__":
    main()
