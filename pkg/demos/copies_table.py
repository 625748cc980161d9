"""Walk from fan data to the number of S^3 x S^3 summands.

For each variety: intersect ray divisors in the Chow ring, read off the
Euler number of a smooth anticanonical hypersurface, then its Betti
numbers and the summand count after contracting three rigid curves.
"""

from toricfano.chow import betti_profile, chern_data, intersection_number
from toricfano.corpus import load_corpus


def main():
    bundles = load_corpus()

    fan = bundles[-1].spec.fan  # C4 is P^2 x P^2
    print("C4: D1 D2 D4 D5 =", intersection_number(fan, [0, 1, 3, 4]),
          " D1 D2 D3 D4 =", intersection_number(fan, [0, 1, 2, 3]))
    print("C4: c4 has", len(chern_data(fan)[3].terms), "terms, one per maximal cone")
    print()

    print(f"{'variety':<8}{'euler':>7}{'b3':>6}{'copies':>8}{'expected':>10}")
    for b in bundles:
        p = betti_profile(b.spec.fan)
        expected = b.spec.expected.get("copies", "-")
        print(f"{b.spec.name:<8}{p.euler:>7}{p.betti[3]:>6}{p.copies:>8}{expected:>10}")


if __name__ == "__main__":
    main()
