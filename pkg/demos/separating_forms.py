"""Why two rigid curves on a generic hypersurface stay apart.

A meeting pair moves in a family of dimension dim U.  If dim U - 5
anticanonical forms have independent restrictions to the pair, a generic
hypersurface contains no such pair.  Here the rank is checked on random
members of the family.
"""

from dataclasses import replace

from toricfano.corpus import load_corpus
from toricfano.exact import bf_gcd_set
from toricfano.moduli import instantiate, restricted_span_dim, separation_check


def main():
    bundles = {b.spec.name: b for b in load_corpus()}

    case = bundles["B1"].paircases[0]
    print(f"{case.label}: dim U = {case.stated_dim}, {len(case.forms)} forms")
    for seed in range(3):
        r = separation_check(case, seed)
        print(f"  seed {seed}: rank {r.rank} of {r.forms} -> {'pass' if r.passed else 'fail'}")
    r = separation_check(case, 0, drop=3)
    print(f"  one form dropped: rank {r.rank}, required {r.required} -> {'pass' if r.passed else 'fail'}")

    # the span on a single curve shrinks as two parameters share factors
    same = next(c for c in bundles["B2"].paircases if c.branch == "same line")
    print(f"\n{same.label}: span of {len(same.forms)} forms on the first curve")
    for k in (0, 1, 2):
        conds = tuple({"gcd_degree": ["alpha2", "alpha3", k]} if "gcd_degree" in c else c
                      for c in same.side_conditions)
        values, curves = instantiate(replace(same, side_conditions=conds), 0)
        g = bf_gcd_set([values["alpha2"], values["alpha3"]])
        print(f"  deg gcd(alpha2, alpha3) = {g.degree}: span {restricted_span_dim(same.forms, curves[0], values)}")


if __name__ == "__main__":
    main()
