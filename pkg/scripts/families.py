"""Two infinite families: a reflection in D_2n, and C_p or C_m inside the metacyclic group C_p |x C_n."""

from __future__ import annotations

import argparse
import sys

from xmodcalc.ident import are_isomorphic, family
from xmodcalc.induced import induce_subgroups, oracle_dihedral_reflection
from xmodcalc.xmod import homotopy_groups


def dihedral(n_max: int) -> bool:
    ok = True
    print("reflection C2 in D2n")
    for n in range(1, n_max + 1):
        Q = family("D", 2 * n)
        s = Q.gens[-1]
        r = induce_subgroups(Q, [s], [s])
        pi1, pi2 = homotopy_groups(r.induced)
        pred = oracle_dihedral_reflection(n)
        good = (
            are_isomorphic(Q, r.group) is not None
            and r.boundary.is_bijective() == pred.boundary_bijective
            and (pi2.order, pi1.order) == (pred.kernel_order, pred.cokernel_order)
        )
        ok &= good
        print(f"  n={n:2d}: order {r.group.order:3d}, ker {pi2.order}, coker {pi1.order}, bijective {r.boundary.is_bijective()}  {'ok' if good else 'BAD'}")
    return ok


def metacyclic(triples) -> bool:
    ok = True
    print("C_m <= C_p in C_p |x C_n")
    for p, n, a in triples:
        Q = family("CpCn", p, n, a)
        g = Q.gens[0]
        for m in [d for d in range(1, p + 1) if p % d == 0 and d > 1]:
            x = g ** (p // m)
            r = induce_subgroups(Q, [g], [x])
            expect = Q.order if m == p else m * n
            good = r.boundary.is_injective() and r.boundary.image().order == expect
            ok &= good
            kind = "identity" if m == p else "normal subgroup"
            print(f"  (p,n,a)=({p},{n},{a}) m={m}: order {r.group.order}, boundary injective onto order {r.boundary.image().order} ({kind})  {'ok' if good else 'BAD'}")
    return ok


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args(argv)
    ok = dihedral(args.n_max)
    ok &= metacyclic([(2, 3, 2), (4, 5, 2), (3, 7, 2), (6, 7, 3), (2, 9, 8)])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
