"""Rational curves ``P^1 -> X`` in Cox coordinates and their certificates.

A curve is a tuple of binary forms ``(f_rho(s, t))``, one per ray, where
``f_rho`` has degree ``d_rho`` (the curve type).  All checks reduce to gcds
of binary forms or to ranks of exact matrices built from form coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .cox import ClassGroupData, CoxPolynomial
from .exact import ONE, ZERO, BinaryForm, bf_gcd_set, int_kernel, rat_rank, snf
from .fan import DIM, Fan


class PreconditionError(ValueError):
    """A check was asked for on a curve that fails an earlier stage."""


class DegenerateConfiguration(ValueError):
    """Trivial deformations do not span the expected 5-dimensional space."""


@dataclass(frozen=True)
class RationalCurve:
    forms: tuple[BinaryForm, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.forms) != len(self.degrees):
            raise ValueError("one degree per form is required")
        for f, d in zip(self.forms, self.degrees):
            if not f.is_zero and f.degree != d:
                raise ValueError(f"form {f} does not have declared degree {d}")
            if d < 0 and not f.is_zero:
                raise ValueError("negative degree forms must be ZERO")
        if all(f.is_zero for f in self.forms):
            raise ValueError("all forms are ZERO")

    @classmethod
    def from_forms(cls, forms, degrees=None) -> "RationalCurve":
        forms = tuple(forms)
        if degrees is None:
            if any(f.is_zero for f in forms):
                raise ValueError("type must be declared when a form is ZERO")
            degrees = tuple(f.degree for f in forms)
        return cls(forms, tuple(degrees))

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.forms) + ")"


def validate_type(fan: Fan, degrees) -> bool:
    """``sum_rho d_rho n_rho == 0`` in Z^4."""
    return all(sum(d * r[k] for d, r in zip(degrees, fan.rays)) == 0 for k in range(DIM))


def curve_class(cg: ClassGroupData, curve: RationalCurve) -> tuple[int, ...]:
    """Coordinates of the curve class dual to the basis ``[D_b1], [D_b2]``."""
    if not cg.basis_rays:
        raise ValueError("class group has no named basis rays")
    d = curve.degrees
    # well-definedness: d must be a functional on the class group
    for rho, w in enumerate(cg.weights):
        if d[rho] != sum(w[j] * d[b] for j, b in enumerate(cg.basis_rays)):
            raise ValueError("type does not factor through the class group")
    return tuple(d[b] for b in cg.basis_rays)


def format_class(coords, basis_rays) -> str:
    parts = []
    for c, b in zip(coords, basis_rays):
        if c == 0:
            continue
        name = f"[D{b + 1}]"
        parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}{name}")
    return "+".join(parts).replace("+-", "-") or "0"


def classes_generate(classes) -> bool:
    res = snf([list(c) for c in classes])
    return [d for d in res.diagonal if d] == [1] * len(classes[0])


def all_nonzero_relation(classes, search: int = 3):
    """Integer relation ``sum lambda_i c_i = 0`` with every ``lambda_i != 0``."""
    A = [[c[j] for c in classes] for j in range(len(classes[0]))]
    basis = int_kernel(A)
    if not basis:
        return None
    candidates = [basis[0]] if len(basis) == 1 else (
        [sum(k * b[i] for k, b in zip(ks, basis)) for i in range(len(classes))]
        for ks in product(range(-search, search + 1), repeat=len(basis)))
    for v in candidates:
        v = list(v)
        if all(v):
            pos = sum(1 for x in v if x > 0)
            if pos * 2 < len(v) or (pos * 2 == len(v) and v[0] < 0):
                v = [-x for x in v]
            return tuple(v)
    return None


def _product(forms) -> BinaryForm:
    out = ONE
    for f in forms:
        out = out * f
    return out


def avoids_exceptional(fan: Fan, curve: RationalCurve) -> bool:
    """The image misses the exceptional set ``Z`` for every ``(s:t)``."""
    prods = []
    for cone in fan.maximal_cones:
        p = _product(curve.forms[i] for i in range(fan.n_rays) if i not in cone)
        if not p.is_zero:
            prods.append(p)
    return bool(prods) and bf_gcd_set(prods) == ONE


class _Powers:
    def __init__(self, forms):
        self.forms = forms
        self.cache = {}

    def __call__(self, rho, k):
        key = (rho, k)
        if key not in self.cache:
            self.cache[key] = ONE if k == 0 else self(rho, k - 1) * self.forms[rho]
        return self.cache[key]


def restrict_section(F: CoxPolynomial, curve: RationalCurve) -> BinaryForm:
    """Substitute ``X_rho <- f_rho``; the result is ZERO or of degree
    ``sum(d_rho)`` for anticanonical ``F``."""
    pw = _Powers(curve.forms)
    total = ZERO
    for exps, c in F.terms.items():
        term = BinaryForm.constant(c)
        for rho, e in enumerate(exps):
            if e:
                term = term * pw(rho, e)
                if term.is_zero:
                    break
        total = total + term
    return total


def lies_on(F: CoxPolynomial, curve: RationalCurve) -> bool:
    return restrict_section(F, curve).is_zero


def restricted_gradient(F: CoxPolynomial, curve: RationalCurve) -> list[BinaryForm]:
    return [restrict_section(F.partial(rho), curve) for rho in range(len(curve.forms))]


def smooth_along(F: CoxPolynomial, curve: RationalCurve) -> bool:
    """The gradient of ``F`` has no common zero along the curve."""
    if not lies_on(F, curve):
        raise PreconditionError("smooth_along requires the curve to lie on F = 0")
    grad = [g for g in restricted_gradient(F, curve) if not g.is_zero]
    return bool(grad) and bf_gcd_set(grad) == ONE


def gauge_vectors(cg: ClassGroupData, curve: RationalCurve) -> list[list[BinaryForm]]:
    return [[f * w[j] for f, w in zip(curve.forms, cg.weights)] for j in range(cg.rank)]


def tangent_vectors(curve: RationalCurve) -> tuple[list[BinaryForm], list[BinaryForm]]:
    parts = [f.partials() for f in curve.forms]
    return [p[0] for p in parts], [p[1] for p in parts]


def _det3(rows) -> BinaryForm:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return (a * (e * i - f * h)) - (b * (d * i - f * g)) + (c * (d * h - e * g))


def _minors_gcd(cols) -> BinaryForm | None:
    n = len(cols[0])
    minors = []
    for rows in combinations(range(n), 3):
        m = _det3([[col[r] for col in cols] for r in rows])
        if not m.is_zero:
            minors.append(m)
    return bf_gcd_set(minors) if minors else None


def immersion_check(cg: ClassGroupData, curve: RationalCurve) -> bool:
    """The velocity escapes the torus-orbit directions at every point.

    On the chart ``t != 0`` the velocity is ``d f / d s``; on ``s != 0`` it
    is ``d f / d t``.  Rank 3 of ``[g1 g2 velocity]`` is read off the gcd of
    the 3x3 minors, which may only vanish outside the chart.
    """
    g1, g2 = gauge_vectors(cg, curve)
    ds, dt = tangent_vectors(curve)
    gs = _minors_gcd([g1, g2, ds])
    gt = _minors_gcd([g1, g2, dt])
    if gs is None or gt is None:
        return False
    return gs.is_power_of("t") and gt.is_power_of("s")


def injectivity_witness(cg: ClassGroupData, curve: RationalCurve, bound: int = 4):
    """A torus character restricting to a degree-1 map ``P^1 -> P^1``.

    Returns the exponent vector ``a`` (with ``Q^T a = 0``) of a character
    ``prod X_rho^a_rho`` whose numerator and denominator restrict to coprime
    linear forms; its existence proves the curve map is injective.
    """
    n = len(curve.forms)
    basis = cg.basis_rays
    free = [r for r in range(n) if r not in basis]
    live = [not f.is_zero for f in curve.forms]
    ranges = [range(-bound, bound + 1) if live[r] else (0,) for r in free]
    best = None
    for vals in product(*ranges):
        a = [0] * n
        for r, v in zip(free, vals):
            a[r] = v
        for j, b in enumerate(basis):
            a[b] = -sum(a[r] * cg.weights[r][j] for r in free)
        if any(a[r] and not live[r] for r in range(n)):
            continue
        if sum(a[r] * curve.degrees[r] for r in range(n) if a[r] > 0) != 1:
            continue
        num = _product(curve.forms[r] ** a[r] for r in range(n) if a[r] > 0)
        den = _product(curve.forms[r] ** -a[r] for r in range(n) if a[r] < 0)
        if bf_gcd_set([num, den]) == ONE:
            key = (sum(abs(x) for x in a), a)
            if best is None or key < best:
                best = key
    return tuple(best[1]) if best else None


# ---------------------------------------------------------------------------
# normal bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalBundleReport:
    dim_ker: int
    dim_gauge_tangent: int
    h0: int
    splitting: tuple[int, int]


def _monomials(degree: int) -> list[BinaryForm]:
    return [BinaryForm.monomial(i, degree - i) for i in range(degree + 1)] if degree >= 0 else []


def _domain(curve, k):
    return [(rho, d + k) for rho, d in enumerate(curve.degrees) if d + k >= 0]


def _flatten(components, domain):
    vec = []
    for rho, deg in domain:
        vec.extend(components[rho].vector(deg))
    return vec


def _check_preconditions(fan, cg, F, curve):
    if min(curve.degrees) < -1:
        raise PreconditionError("some d_rho < -1")
    if not avoids_exceptional(fan, curve):
        raise PreconditionError("curve meets the exceptional set")
    if not lies_on(F, curve):
        raise PreconditionError("curve does not lie on F = 0")
    if not smooth_along(F, curve):
        raise PreconditionError("F is singular somewhere along the curve")
    if not immersion_check(cg, curve):
        raise PreconditionError("curve is not immersed")


def _deformation_dims(cg, F, curve, k):
    grad = restricted_gradient(F, curve)
    target = curve.total_degree + k
    domain = _domain(curve, k)
    # columns of L: monomial basis of each domain coordinate
    cols = []
    for rho, deg in domain:
        for mono in _monomials(deg):
            cols.append((mono * grad[rho]).vector(target) if not grad[rho].is_zero
                        else [Fraction(0)] * (target + 1))
    n_cols = len(cols)
    dim_ker = n_cols - rat_rank(cols)

    g = gauge_vectors(cg, curve)
    ds, dt = tangent_vectors(curve)
    spanning = []
    for gj in g:
        for h in _monomials(k):
            spanning.append([c * h for c in gj])
    for vel in (ds, dt):
        for p in _monomials(k + 1):
            spanning.append([c * p for c in vel])
    vecs = [_flatten(v, domain) for v in spanning]
    for v in spanning:  # gauge containment: V lies in ker L
        image = ZERO
        for rho, _ in domain:
            image = image + v[rho] * grad[rho]
        if not image.is_zero:
            raise AssertionError("trivial deformation outside ker L (curve not on F?)")
    dim_v = rat_rank(vecs)
    return dim_ker, dim_v


def h0_normal(fan: Fan, cg: ClassGroupData, F: CoxPolynomial, curve: RationalCurve) -> NormalBundleReport:
    """``h^0`` and splitting of the normal bundle of the curve in ``F = 0``.

    Sections of the pulled-back tangent bundle are tuples ``(g_rho)`` of
    forms of degree ``d_rho`` modulo the two gauge vectors; tangency to the
    hypersurface is the kernel of ``(g_rho) -> sum g_rho dF/dX_rho``; the
    reparametrizations of ``P^1`` are divided out last.
    """
    _check_preconditions(fan, cg, F, curve)
    dim_ker, dim_v = _deformation_dims(cg, F, curve, 0)
    if dim_v != 5:
        raise DegenerateConfiguration(f"trivial deformations span {dim_v} dimensions, expected 5")
    h0 = dim_ker - dim_v
    split = (-1, -1) if h0 == 0 else (h0 - 1, -1 - h0)
    return NormalBundleReport(dim_ker, dim_v, h0, split)


def h0_twisted(fan: Fan, cg: ClassGroupData, F: CoxPolynomial, curve: RationalCurve, k: int) -> int:
    """``h^0(N(k))`` for ``k >= 0`` computed from degree-shifted tuples."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    _check_preconditions(fan, cg, F, curve)
    dim_ker, dim_v = _deformation_dims(cg, F, curve, k)
    if dim_v != 3 * k + 5:
        raise DegenerateConfiguration(f"trivial deformations span {dim_v}, expected {3 * k + 5}")
    return dim_ker - dim_v


def h0_of_splitting(splitting, k: int = 0) -> int:
    return sum(max(0, a + k + 1) for a in splitting)


def disjointness_witnesses(curve_a: RationalCurve, curve_b: RationalCurve) -> list[int]:
    """Rays whose coordinate vanishes identically on one curve and is a
    nonzero constant on the other."""
    out = []
    for rho, (fa, fb) in enumerate(zip(curve_a.forms, curve_b.forms)):
        if (fa.is_zero and not fb.is_zero and fb.degree == 0) or (
                fb.is_zero and not fa.is_zero and fa.degree == 0):
            out.append(rho)
    return out


def disjoint_by_coordinate(curve_a: RationalCurve, curve_b: RationalCurve):
    """First disjointness witness ray, or None."""
    found = disjointness_witnesses(curve_a, curve_b)
    return found[0] if found else None
