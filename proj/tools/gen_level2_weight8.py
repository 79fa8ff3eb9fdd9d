#!/usr/bin/env python3
"""Writes the q-expansion of eta(tau)^8 eta(2 tau)^8, the level 2 weight 8
newform, in the coefficient-file format read by `klingen --coeff-file`.

The product is formed with exact integers from sparse factors: the Jacobi
series for eta^3 and the pentagonal series for eta, in q and in q^2.
"""

import argparse
import sys


def pentagonal(order, step):
    """prod (1 - q^{step n}) = sum (-1)^m q^{step m(3m-1)/2} over m in Z."""
    out = {0: 1}
    m = 1
    while step * m * (3 * m - 1) // 2 < order:
        for e in (m * (3 * m - 1) // 2, m * (3 * m + 1) // 2):
            if step * e < order:
                out[step * e] = (-1) ** m
        m += 1
    return out


def jacobi_cube(order, step):
    """prod (1 - q^{step n})^3 = sum (-1)^m (2m + 1) q^{step m(m+1)/2}."""
    out = {}
    m = 0
    while step * m * (m + 1) // 2 < order:
        out[step * m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return out


def mul_sparse(dense, sparse, order):
    out = [0] * order
    for e, c in sparse.items():
        for i in range(order - e):
            if dense[i]:
                out[i + e] += c * dense[i]
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=6000, help="number of coefficients a(1..order)")
    ap.add_argument("--output", default="-")
    args = ap.parse_args()

    # Series in q for P(q)^8 P(q^2)^8, up to q^{order - 1}; f = q times it.
    n = args.order
    j1, j2 = jacobi_cube(n, 1), jacobi_cube(n, 2)
    p1, p2 = pentagonal(n, 1), pentagonal(n, 2)
    series = [0] * n
    for e, c in j1.items():
        series[e] = c
    for factor in (j1, p1, p1, j2, j2, p2, p2):
        series = mul_sparse(series, factor, n)

    out = sys.stdout if args.output == "-" else open(args.output, "w")
    out.write("# eta(tau)^8 eta(2 tau)^8, level 2 weight 8 newform\n")
    out.write(f"weight 8 level 2 order {n} character trivial\n")
    for i in range(1, n + 1):
        out.write(f"{i} {series[i - 1]}\n")
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
