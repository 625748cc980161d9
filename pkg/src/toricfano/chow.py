"""Intersection numbers on smooth complete toric 4-folds.

The Chow ring is generated by the ray divisors ``D_rho`` subject to the
Stanley-Reisner relations (squarefree monomials off the fan vanish) and the
linear relations ``sum_rho <m, n_rho> D_rho = 0``.  Repeated factors are
removed with a linear relation that isolates the repeated ray inside a
cone containing the whole support.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .exact import rat_solve
from .fan import DIM, Fan

L_CURVES = 3  # curves contracted in each conifold transition


@dataclass(frozen=True)
class ChowClass:
    """Rational combination of squarefree ray monomials of one codimension."""

    codim: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, codim: int, d: dict) -> "ChowClass":
        return cls(codim, tuple(sorted((k, Fraction(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "ChowClass") -> "ChowClass":
        if self.codim != other.codim:
            raise ValueError("cannot add classes of different codimension")
        out = Counter(self.as_dict())
        for k, v in other.terms:
            out[k] += v
        return ChowClass.from_dict(self.codim, out)

    def scale(self, c) -> "ChowClass":
        return ChowClass.from_dict(self.codim, {k: c * v for k, v in self.terms})

    @property
    def is_zero(self) -> bool:
        return not self.terms


def divisor(fan: Fan, coeffs) -> ChowClass:
    """``sum_rho coeffs[rho] * D_rho``."""
    return ChowClass.from_dict(1, {(r,): c for r, c in enumerate(coeffs) if c})


def _faces(fan: Fan) -> set:
    out = set()
    for cone in fan.maximal_cones:
        for k in range(DIM + 1):
            out.update(combinations(cone, k))
    return out


@lru_cache(maxsize=None)
def _face_set(fan: Fan) -> frozenset:
    return frozenset(_faces(fan))


@lru_cache(maxsize=None)
def _isolating_relation(fan: Fan, cone: tuple, rho: int) -> tuple:
    """Coefficients ``<m, n_tau>`` for ``m`` dual to ``rho`` in ``cone``."""
    rhs = [1 if i == rho else 0 for i in cone]
    m = rat_solve([list(fan.rays[i]) for i in cone], rhs)
    return tuple(sum(a * b for a, b in zip(m, fan.rays[t])) for t in range(fan.n_rays))


def reduce_product(fan: Fan, rays, rng: random.Random | None = None) -> ChowClass:
    """Squarefree normal form of ``prod D_rho`` over the multiset ``rays``.

    ``rng`` randomizes which repeated ray and which containing cone are used
    at each step; the result does not depend on these choices.
    """
    key = tuple(sorted(rays))
    if rng is None:
        return _reduce_cached(fan, key)
    return ChowClass.from_dict(len(key), _reduce(fan, key, rng))


@lru_cache(maxsize=None)
def _reduce_cached(fan: Fan, key: tuple) -> ChowClass:
    return ChowClass.from_dict(len(key), _reduce(fan, key, None))


def _reduce(fan: Fan, key: tuple, rng) -> dict:
    faces = _face_set(fan)
    support = tuple(sorted(set(key)))
    if support not in faces:
        return {}
    if len(support) == len(key):
        return {key: Fraction(1)}
    counts = Counter(key)
    repeated = sorted(r for r, c in counts.items() if c > 1)
    rho = rng.choice(repeated) if rng else repeated[0]
    cones = [c for c in fan.maximal_cones if set(support) <= set(c)]
    cone = rng.choice(cones) if rng else cones[0]
    rel = _isolating_relation(fan, cone, rho)
    rest = list(key)
    rest.remove(rho)
    out = Counter()
    # D_rho = -sum_{tau not in cone} <m, n_tau> D_tau
    for tau in range(fan.n_rays):
        if tau in cone or not rel[tau]:
            continue
        sub = tuple(sorted(rest + [tau]))
        part = _reduce(fan, sub, rng) if rng else _reduce_cached(fan, sub).as_dict()
        for k, v in part.items():
            out[k] -= rel[tau] * v
    return {k: v for k, v in out.items() if v}


def multiply(fan: Fan, a: ChowClass, b: ChowClass, rng=None) -> ChowClass:
    out = Counter()
    for ka, va in a.terms:
        for kb, vb in b.terms:
            for k, v in reduce_product(fan, ka + kb, rng).terms:
                out[k] += va * vb * v
    return ChowClass.from_dict(a.codim + b.codim, out)


def degree(fan: Fan, top: ChowClass) -> Fraction:
    """Integral of a codimension-4 class: each maximal cone counts 1."""
    if top.codim != DIM:
        raise ValueError("only codimension-4 classes can be integrated")
    cones = set(fan.maximal_cones)
    return sum((v for k, v in top.terms if k in cones), Fraction(0))


def intersection_number(fan: Fan, classes, rng=None) -> int:
    """``D_a . D_b . D_c . D_d`` for four divisor classes (or ray indices)."""
    classes = [divisor(fan, [int(i == c) for i in range(fan.n_rays)]) if isinstance(c, int) else c
               for c in classes]
    if len(classes) != DIM or any(c.codim != 1 for c in classes):
        raise ValueError("four divisor classes are required")
    prod = classes[0]
    for c in classes[1:]:
        prod = multiply(fan, prod, c, rng)
    value = degree(fan, prod)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral intersection number {value}")
    return int(value)


def chern_data(fan: Fan) -> list[ChowClass]:
    """``[c_1, c_2, c_3, c_4]`` as elementary symmetric functions of the ``D_rho``."""
    faces = _face_set(fan)
    return [ChowClass.from_dict(k, {f: 1 for f in combinations(range(fan.n_rays), k) if f in faces})
            for k in range(1, DIM + 1)]


def anticanonical_class(fan: Fan) -> ChowClass:
    return divisor(fan, [1] * fan.n_rays)


def hypersurface_euler(fan: Fan) -> int:
    """Euler number of a smooth anticanonical hypersurface.

    From ``c(Y) = c(X) / (1 + H)`` with ``c_1(X) = H`` the degree-3 part is
    ``c_3 - H c_2``, so ``e(Y) = int_X H c_3 - H^2 c_2``.
    """
    _, c2, c3, _ = chern_data(fan)
    H = anticanonical_class(fan)
    Hc3 = degree(fan, multiply(fan, H, c3))
    H2c2 = degree(fan, multiply(fan, multiply(fan, H, H), c2))
    e = Hc3 - H2c2
    if e.denominator != 1:
        raise ArithmeticError(f"non-integral Euler number {e}")
    return int(e)


@dataclass(frozen=True)
class BettiProfile:
    betti: tuple[int, ...]
    euler: int
    copies: int


def betti_profile(fan: Fan, picard_rank: int = 2) -> BettiProfile:
    """Betti numbers of the hypersurface and the count of ``S^3 x S^3`` summands.

    Lefschetz gives ``b_2 = picard_rank`` and Poincare duality the rest; the
    smoothing after contracting three curves has
    ``b_3 / 2 + 3 - b_2`` summands.
    """
    e = hypersurface_euler(fan)
    b2 = picard_rank
    b3 = 2 + 2 * b2 - e
    if b3 % 2:
        raise ArithmeticError(f"odd third Betti number {b3}")
    return BettiProfile((1, 0, b2, b3, b2, 0, 1), e, b3 // 2 + L_CURVES - b2)
