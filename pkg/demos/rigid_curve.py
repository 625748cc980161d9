"""One certificate row, stage by stage, then a curve that is not rigid."""

from toricfano.corpus import load_corpus
from toricfano.cox import CoxPolynomial, class_group
from toricfano.curves import (
    RationalCurve,
    avoids_exceptional,
    curve_class,
    h0_normal,
    h0_twisted,
    immersion_check,
    injectivity_witness,
    lies_on,
    restricted_gradient,
    smooth_along,
)
from toricfano.exact import ZERO, BinaryForm


def show(label, value):
    print(f"  {label:<22}{value}")


def main():
    bundles = {b.spec.name: b for b in load_corpus()}

    spec = bundles["B1"].spec
    cg = class_group(spec.fan, spec.basis_rays)
    row = bundles["B1"].certificates[0]
    print(f"B1 row 1: curve {row.curve} on F = {row.hypersurface}")
    show("class", curve_class(cg, row.curve))
    show("misses Z", avoids_exceptional(spec.fan, row.curve))
    show("on F", lies_on(row.hypersurface, row.curve))
    show("gradient", [str(g) for g in restricted_gradient(row.hypersurface, row.curve)])
    show("smooth along", smooth_along(row.hypersurface, row.curve))
    show("immersed", immersion_check(cg, row.curve))
    show("character witness", injectivity_witness(cg, row.curve))
    nb = h0_normal(spec.fan, cg, row.hypersurface, row.curve)
    show("dim ker L, dim V", (nb.dim_ker, nb.dim_gauge_tangent))
    show("splitting", nb.splitting)
    show("h0(N(1))", h0_twisted(spec.fan, cg, row.hypersurface, row.curve, 1))

    # same construction with a repeated quadric: the line moves
    spec = bundles["B4"].spec
    cg = class_group(spec.fan, spec.basis_rays)
    s, t, one = BinaryForm.monomial(1, 0), BinaryForm.monomial(0, 1), BinaryForm.constant(1)
    line = RationalCurve((one, ZERO, ZERO, ZERO, s, t), (0, 0, 0, 0, 1, 1))
    F = CoxPolynomial({(3, 1, 0, 0, 2, 0): 1, (3, 1, 0, 0, 0, 2): 1, (3, 0, 1, 0, 2, 0): 1,
                       (3, 0, 1, 0, 0, 2): 1, (3, 0, 0, 1, 1, 1): 1})
    print(f"\nB4: curve {line} on F = {F}")
    nb = h0_normal(spec.fan, cg, F, line)
    show("dim ker L, dim V", (nb.dim_ker, nb.dim_gauge_tangent))
    show("h0", nb.h0)
    show("splitting", nb.splitting)
    show("h0(N(1))", h0_twisted(spec.fan, cg, F, line, 1))


if __name__ == "__main__":
    main()
