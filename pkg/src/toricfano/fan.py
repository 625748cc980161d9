"""Simplicial fans in Z^4: smoothness, completeness and the Fano condition."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .exact import det, rat_solve

DIM = 4


class FanError(ValueError):
    """Malformed fan data (bad rays, bad cone indices)."""


@dataclass(frozen=True)
class Fan:
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.maximal_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "maximal_cones", cones)
        for r in rays:
            if len(r) != DIM:
                raise FanError(f"ray {r} is not in Z^{DIM}")
            if not any(r):
                raise FanError("zero ray")
            if gcd(*r) != 1:
                raise FanError(f"ray {r} is not primitive")
        used = set()
        for c in cones:
            if len(c) != DIM or len(set(c)) != DIM:
                raise FanError(f"maximal cone {c} must have {DIM} distinct rays")
            if not all(0 <= i < len(rays) for i in c):
                raise FanError(f"maximal cone {c} references an unknown ray")
            used.update(c)
        if used != set(range(len(rays))):
            raise FanError(f"rays {sorted(set(range(len(rays))) - used)} lie in no maximal cone")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone) -> list[list[int]]:
        return [list(self.rays[i]) for i in cone]

    def transform(self, A) -> "Fan":
        """Apply the linear map ``A`` (4x4 integer matrix) to every ray."""
        rays = [tuple(sum(A[i][k] * r[k] for k in range(DIM)) for i in range(DIM)) for r in self.rays]
        return Fan(tuple(rays), self.maximal_cones)

    def walls(self):
        """Yield ``(i, j, facet)`` for pairs of maximal cones sharing a facet."""
        index = {}
        for ci, cone in enumerate(self.maximal_cones):
            for facet in combinations(cone, DIM - 1):
                index.setdefault(facet, []).append(ci)
        for facet, owners in index.items():
            for a, b in combinations(owners, 2):
                yield a, b, facet


@dataclass(frozen=True)
class VarietySpec:
    """A named fan together with the data the literature records about it."""

    name: str
    fan: Fan
    relations: tuple = ()  # ((lhs coeffs), (rhs coeffs)) per relation
    weights: tuple = ()  # declared torus-action weights, one pair per ray
    basis_rays: tuple = (3, 4)
    expected: dict = field(default_factory=dict, compare=False)
    source: dict = field(default_factory=dict, compare=False)


def pairing(m, n) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(m, n))


def is_smooth(fan: Fan) -> bool:
    """Every maximal cone is generated by a Z-basis (determinant +-1)."""
    return all(abs(det(fan.cone_matrix(c))) == 1 for c in fan.maximal_cones)


def unmatched_facet(fan: Fan):
    """First facet (in cone order) not shared by exactly two maximal cones.

    Returns None when every facet is paired and the adjacency graph of
    maximal cones is connected; returns ``("disconnected", cones)`` if the
    pairing holds but the graph splits.
    """
    owners = {}
    order = []
    for ci, cone in enumerate(fan.maximal_cones):
        for facet in combinations(cone, DIM - 1):
            if facet not in owners:
                order.append(facet)
            owners.setdefault(facet, []).append(ci)
    for facet in order:
        if len(owners[facet]) != 2:
            return facet
    adj = {i: set() for i in range(len(fan.maximal_cones))}
    for a, b in (v for v in owners.values()):
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(fan.maximal_cones):
        return ("disconnected", tuple(sorted(set(adj) - seen)))
    return None


def locate(fan: Fan, v) -> int | None:
    """Index of a maximal cone containing the vector ``v``, or None."""
    for ci, cone in enumerate(fan.maximal_cones):
        cols = [[fan.rays[i][k] for i in cone] for k in range(DIM)]
        coeffs = rat_solve(cols, v)
        if coeffs is not None and all(c >= 0 for c in coeffs):
            return ci
    return None


def sample_coverage(fan: Fan, samples: int = 1000, seed: int = 0, bound: int = 50) -> list:
    """Random integer vectors that lie in no maximal cone (empty if covered)."""
    rng = random.Random(seed)
    missed = []
    for _ in range(samples):
        v = [rng.randint(-bound, bound) for _ in range(DIM)]
        if locate(fan, v) is None:
            missed.append(v)
    return missed


def folded_walls(fan: Fan) -> list:
    """Walls whose two cones lie on the same side of the shared facet."""
    bad = []
    for a, b, facet in fan.walls():
        normal = [det([list(fan.rays[i]) for i in facet] + [[int(k == j) for k in range(DIM)]])
                  for j in range(DIM)]
        (xa,) = set(fan.maximal_cones[a]) - set(facet)
        (xb,) = set(fan.maximal_cones[b]) - set(facet)
        if pairing(normal, fan.rays[xa]) * pairing(normal, fan.rays[xb]) >= 0:
            bad.append((a, b))
    return bad


def is_complete(fan: Fan, samples: int = 1000, seed: int = 0) -> bool:
    """Facets pair up across proper walls; random vectors cross-check coverage."""
    if unmatched_facet(fan) is not None or folded_walls(fan):
        return False
    return not samples or not sample_coverage(fan, samples, seed)


def support_values(fan: Fan) -> dict:
    """For each maximal cone, the ``m`` with ``<m, n_rho> = -1`` on its rays."""
    out = {}
    for ci, cone in enumerate(fan.maximal_cones):
        out[ci] = rat_solve(fan.cone_matrix(cone), [-1] * DIM)
    return out


def fano_violations(fan: Fan) -> list:
    """Walls where the anticanonical support function fails strict convexity."""
    m = support_values(fan)
    bad = []
    for a, b, facet in fan.walls():
        for s, o in ((a, b), (b, a)):
            (extra,) = set(fan.maximal_cones[o]) - set(facet)
            if pairing(m[s], fan.rays[extra]) <= -1:
                bad.append((s, o, extra))
    return bad


def is_fano(fan: Fan) -> bool:
    return not fano_violations(fan)


def violated_relations(spec: VarietySpec) -> list[int]:
    """Indices of declared linear relations that fail for the realized rays."""
    bad = []
    for k, (lhs, rhs) in enumerate(spec.relations):
        total = [sum((lhs[r] - rhs[r]) * spec.fan.rays[r][i] for r in range(spec.fan.n_rays))
                 for i in range(DIM)]
        if any(total):
            bad.append(k)
    return bad


def check_relations(spec: VarietySpec, declared=None) -> bool:
    """Declared relations hold and the realized weights match the declared
    torus action up to a unimodular change of basis of the class group."""
    from .cox import class_group, weights_match

    if violated_relations(spec if declared is None else _with_relations(spec, declared)):
        return False
    if spec.weights:
        return weights_match(class_group(spec.fan, spec.basis_rays), spec.weights)
    return True


def _with_relations(spec: VarietySpec, relations) -> VarietySpec:
    return VarietySpec(spec.name, spec.fan, tuple(relations), spec.weights, spec.basis_rays,
                       spec.expected, spec.source)


def random_unimodular(rng: random.Random, n: int = DIM, steps: int = 12) -> list[list[int]]:
    """Product of random elementary integer matrices."""
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-2, -1, 1, 2])
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        if rng.random() < 0.3:
            A[i], A[j] = A[j], A[i]
    return A
