#!/usr/bin/env python3
"""Print the permutation-module decomposition of every cohomology degree.

For each degree the table lists the generator permutation, its descent
composition, the erased composition, the module type, and the dimension;
the final column confirms that the degree dimensions add up to n!.
"""

import argparse
import sys

from gkmhess.decomp import verify_decomposition


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5)
    args = parser.parse_args()

    total = 0
    for k in range(args.n):
        result = verify_decomposition(args.n, k)
        total += result.total_dim
        status = "ok" if result.passed else "FAILED"
        print(f"degree 2*{k}: dim {result.total_dim} ({status})")
        for module in result.modules:
            print(
                f"  {module.w}  a={module.a}  erased={module.a_hat}"
                f"  type M{module.module_type}  dim {module.dim_computed}"
            )
    print(f"total dimension: {total}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
