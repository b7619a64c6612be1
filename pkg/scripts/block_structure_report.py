#!/usr/bin/env python3
"""Print the block structure of one RDM: sub-block values with their
position counts, the distinct entries of the assembled matrix, and the full
spectrum with entropy and purity."""

import argparse

from permrdm.rational import rational_str
from permrdm.rdm import (RdmQuery, SystemSpec, assemble_rdm, energy,
                         subblock_count, subblock_values, young_dimension)
from permrdm.spectrum import entropy, full_spectrum, purity


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--L", type=int, default=12)
    parser.add_argument("--N", type=int, default=6)
    parser.add_argument("--r", type=int, default=3)
    parser.add_argument("--n", type=int, default=6)
    args = parser.parse_args()

    spec = SystemSpec(args.L, args.N, args.r)
    q = RdmQuery(spec, args.n)
    print(f"system (L={args.L}, N={args.N}, r={args.r}),  subsystem n={args.n}")
    print(f"level degeneracy {young_dimension(args.L, args.r)}, "
          f"energy {rational_str(energy(spec))}\n")

    print(" k  Z  count  value")
    for (k, Z), v in sorted(subblock_values(q).items()):
        print(f"{k:2d} {Z:2d} {subblock_count(args.n, k, Z):6d}  {rational_str(v)}")

    m = assemble_rdm(q)
    distinct = sorted(set(m.matrix.entries))
    print(f"\ndistinct matrix entries ({len(distinct)}):",
          " ".join(rational_str(v) for v in distinct))

    entries = full_spectrum(q)
    print("\n k  s  mult  eigenvalue")
    for e in entries:
        print(f"{e.k:2d} {e.s:2d} {e.multiplicity:5d}  {rational_str(e.value)}")
    print(f"\nentropy  {entropy(entries):.12f} nats")
    print(f"purity   {rational_str(purity(entries))}")


if __name__ == "__main__":
    main()
