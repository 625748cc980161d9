"""Class group, torus weights and anticanonical sections in Cox coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import floor, ceil

from .exact import det, rat_solve, snf
from .fan import DIM, Fan, pairing


class TorsionError(ValueError):
    """The class group has torsion (never the case for smooth complete fans)."""


class MixedDegreeError(ValueError):
    """A Cox polynomial whose terms have different multidegrees."""


@dataclass(frozen=True)
class ClassGroupData:
    """Weights of the rays in a chosen basis of the class group.

    ``weights[rho]`` are the coordinates of ``[D_rho]``; the rows indexed by
    ``basis_rays`` are the unit vectors.  ``snf_witness`` is the row
    transform ``U`` from the Smith form of the ray matrix.
    """

    weights: tuple[tuple[int, ...], ...]
    basis_rays: tuple[int, ...]
    snf_witness: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    @property
    def anticanonical(self) -> tuple[int, ...]:
        return tuple(sum(w[j] for w in self.weights) for j in range(self.rank))

    def degree_of(self, exps) -> tuple[int, ...]:
        return tuple(sum(e * w[j] for e, w in zip(exps, self.weights)) for j in range(self.rank))


def _inverse_2x2(B):
    d = B[0][0] * B[1][1] - B[0][1] * B[1][0]
    return [[B[1][1] * d, -B[0][1] * d], [-B[1][0] * d, B[0][0] * d]]  # d = +-1


def class_group(fan: Fan, basis_rays=None) -> ClassGroupData:
    """Cokernel of ``m -> (<m, n_rho>)_rho`` computed through Smith form.

    If ``basis_rays`` names two rays whose classes form a basis, weights are
    expressed in that basis; otherwise the Smith-form basis is kept.
    """
    P = [list(r) for r in fan.rays]  # n_rays x 4: the map M -> Z^rays
    res = snf(P)
    divisors = [d for d in res.diagonal if d]
    if len(divisors) != DIM:
        raise TorsionError("rays do not span N (class group not of expected rank)")
    if any(d != 1 for d in divisors):
        raise TorsionError(f"class group has torsion: elementary divisors {divisors}")
    n = fan.n_rays
    raw = [tuple(res.U[k][rho] for k in range(DIM, n)) for rho in range(n)]
    if basis_rays is not None and n - DIM == 2:
        B = [list(raw[b]) for b in basis_rays]
        if abs(det(B)) == 1:
            Binv = _inverse_2x2(B)
            w = tuple(tuple(sum(r[k] * Binv[k][j] for k in range(2)) for j in range(2)) for r in raw)
            return ClassGroupData(w, tuple(basis_rays), res.U)
    return ClassGroupData(tuple(raw), (), res.U)


def weights_match(cg: ClassGroupData, declared) -> bool:
    """True iff ``declared == cg.weights @ T`` for some unimodular ``T``."""
    declared = [tuple(w) for w in declared]
    if len(declared) != len(cg.weights):
        return False
    if cg.basis_rays:
        T = [list(declared[b]) for b in cg.basis_rays]
    else:  # recover T from any pair of rows that is a basis of the realized lattice
        T = None
        for a, b in combinations(range(len(cg.weights)), 2):
            B = [list(cg.weights[a]), list(cg.weights[b])]
            if abs(det(B)) == 1:
                Binv = _inverse_2x2(B)
                D = [list(declared[a]), list(declared[b])]
                T = [[sum(Binv[i][k] * D[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
                break
        if T is None:
            return False
    if abs(det(T)) != 1:
        return False
    image = [tuple(sum(w[k] * T[k][j] for k in range(2)) for j in range(2)) for w in cg.weights]
    return image == declared


# ---------------------------------------------------------------------------
# anticanonical polytope
# ---------------------------------------------------------------------------

class UnboundedPolytopeError(ValueError):
    pass


def _in_cone_of_rays(fan: Fan, v) -> bool:
    for sub in combinations(range(fan.n_rays), DIM):
        cols = [[fan.rays[i][k] for i in sub] for k in range(DIM)]
        x = rat_solve(cols, v)
        if x is not None and all(c >= 0 for c in x):
            return True
    return False


def polytope_vertices(fan: Fan) -> list[tuple[Fraction, ...]]:
    verts = set()
    for sub in combinations(range(fan.n_rays), DIM):
        m = rat_solve([list(fan.rays[i]) for i in sub], [-1] * DIM)
        if m is not None and all(pairing(m, r) >= -1 for r in fan.rays):
            verts.add(tuple(m))
    return sorted(verts)


def anticanonical_points(fan: Fan) -> list[tuple[int, ...]]:
    """All ``m`` in Z^4 with ``<m, n_rho> >= -1`` for every ray, sorted."""
    for k in range(DIM):
        for sign in (1, -1):
            e = [0] * DIM
            e[k] = sign
            if not _in_cone_of_rays(fan, e):
                raise UnboundedPolytopeError("rays do not positively span R^4")
    verts = polytope_vertices(fan)
    lo = [floor(min(v[k] for v in verts)) for k in range(DIM)]
    hi = [ceil(max(v[k] for v in verts)) for k in range(DIM)]
    pts = []
    for m in product(*(range(lo[k], hi[k] + 1) for k in range(DIM))):
        if all(sum(a * b for a, b in zip(m, r)) >= -1 for r in fan.rays):
            pts.append(m)
    return pts


def monomial_of(fan: Fan, m) -> tuple[int, ...]:
    exps = tuple(sum(a * b for a, b in zip(m, r)) + 1 for r in fan.rays)
    if min(exps) < 0:
        raise ValueError(f"{m} lies outside the anticanonical polytope")
    return exps


def lattice_point_of(fan: Fan, exps) -> tuple[int, ...]:
    """Inverse of :func:`monomial_of` (rays span, so ``m`` is determined)."""
    for sub in combinations(range(fan.n_rays), DIM):
        m = rat_solve([list(fan.rays[i]) for i in sub], [exps[i] - 1 for i in sub])
        if m is not None:
            if any(x.denominator != 1 for x in m):
                raise ValueError("exponent vector is not anticanonical")
            m = tuple(int(x) for x in m)
            if monomial_of(fan, m) != tuple(exps):
                raise ValueError("exponent vector is not anticanonical")
            return m
    raise ValueError("rays do not span")


def anticanonical_monomials(fan: Fan) -> list[tuple[int, ...]]:
    return [monomial_of(fan, m) for m in anticanonical_points(fan)]


def irrelevant_products(fan: Fan) -> list[tuple[int, ...]]:
    """For each maximal cone, the ray indices of ``X_sigma-hat``."""
    return [tuple(i for i in range(fan.n_rays) if i not in cone) for cone in fan.maximal_cones]


# ---------------------------------------------------------------------------
# Cox polynomials
# ---------------------------------------------------------------------------

class CoxPolynomial:
    """Sparse polynomial in the ray variables with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                exps = tuple(int(e) for e in exps)
                if min(exps) < 0:
                    raise ValueError(f"negative exponent in {exps}")
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def from_terms(cls, pairs) -> "CoxPolynomial":
        out = {}
        for exps, c in pairs:
            out[tuple(exps)] = out.get(tuple(exps), 0) + Fraction(c)
        return cls(out)

    @property
    def nvars(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, CoxPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return CoxPolynomial(out)

    def scale(self, c) -> "CoxPolynomial":
        return CoxPolynomial({e: c * v for e, v in self.terms.items()})

    def __repr__(self):
        return f"CoxPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"X{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(coef + (mono or "1"))
        return " + ".join(parts).replace("+ -", "- ")

    def partial(self, rho: int) -> "CoxPolynomial":
        out = {}
        for e, c in self.terms.items():
            if e[rho]:
                d = list(e)
                d[rho] -= 1
                out[tuple(d)] = c * e[rho]
        return CoxPolynomial(out)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total


def partial_derivative(p: CoxPolynomial, rho: int) -> CoxPolynomial:
    return p.partial(rho)


def multidegree(cg: ClassGroupData, p: CoxPolynomial) -> tuple[int, ...]:
    if not p:
        raise ValueError("zero polynomial has no multidegree")
    degrees = {cg.degree_of(e) for e in p.terms}
    if len(degrees) != 1:
        raise MixedDegreeError(f"terms have multidegrees {sorted(degrees)}")
    return degrees.pop()


def is_anticanonical(cg: ClassGroupData, p: CoxPolynomial) -> bool:
    try:
        return multidegree(cg, p) == cg.anticanonical
    except MixedDegreeError:
        return False


def euler_identity_holds(cg: ClassGroupData, p: CoxPolynomial) -> bool:
    """``sum_rho Q[rho][j] X_rho dF/dX_rho == deg_j(F) F`` for each j."""
    deg = multidegree(cg, p)
    n = len(cg.weights)
    for j in range(cg.rank):
        lhs = CoxPolynomial()
        for rho in range(n):
            d = p.partial(rho)
            shifted = {}
            for e, c in d.terms.items():
                e2 = list(e)
                e2[rho] += 1
                shifted[tuple(e2)] = c * cg.weights[rho][j]
            lhs = lhs + CoxPolynomial(shifted)
        if lhs != p.scale(deg[j]):
            return False
    return True
