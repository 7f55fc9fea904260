#!/usr/bin/env python3
"""Expands the predicate determinants into monomials over raw coordinates.

Writes include/sosign/detail/expansions.inc. Each determinant has one row per
point; an entry is a sum of monomials in that point's coordinates (the
constant column is the empty monomial).
"""

import itertools
import pathlib
import sys

X, Y, Z = 0, 1, 2
ONE = [[]]

PREDICATES = {
    "orient2d": (3, [[[X]], [[Y]], ONE]),
    "orient3d": (4, [[[X]], [[Y]], [[Z]], ONE]),
    "incircle": (4, [[[X]], [[Y]], [[X, X], [Y, Y]], ONE]),
}


def parity(perm):
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def expand(points, columns):
    monomials = []
    for perm in itertools.permutations(range(points)):
        choices = [[(row, axes) for axes in columns[perm[row]]] for row in range(points)]
        for pick in itertools.product(*choices):
            factors = [(row, axis) for row, axes in pick for axis in axes]
            monomials.append((parity(perm), factors))
    return monomials


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else (
        pathlib.Path(__file__).resolve().parent.parent / "include/sosign/detail/expansions.inc")
    lines = ["// Generated by tools/gen_expansions.py; do not edit.", ""]
    for name, (points, columns) in PREDICATES.items():
        monomials = expand(points, columns)
        lines.append(f"inline constexpr Monomial k{name[0].upper()}{name[1:]}[{len(monomials)}] = {{")
        for sign, factors in monomials:
            body = ", ".join(f"{{{p}, {a}}}" for p, a in factors)
            lines.append(f"    {{{sign:+d}, {len(factors)}, {{{body}}}}},")
        lines.append("};")
        lines.append("")
    out.write_text("\n".join(lines))


if __name__ == "__main__":
    main()
