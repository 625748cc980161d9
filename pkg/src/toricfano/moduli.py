"""Parameter-space dimensions and separating-form checks for curve pairs.

A pair of rigid curves that meet would move in a family of dimension
``dim U``.  Disjointness of the pair on a generic hypersurface follows once
``dim U - 5`` anticanonical forms are found that no nonzero combination of
which vanishes on both curves.  This module checks that rank property on
random members of the parametrized pair families.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cox import ClassGroupData, CoxPolynomial, anticanonical_monomials
from .curves import RationalCurve, restrict_section
from .exact import ONE, ZERO, BinaryForm, bf_gcd_set, forms_rank, rat_rank
from .fan import Fan

MAX_HEIGHT = 100
MAX_RETRIES = 200


@dataclass(frozen=True)
class ModuliDims:
    dim_m_prime: int
    dim_m: int


def moduli_dims(degrees) -> ModuliDims:
    prime = 4 + sum(d for d in degrees if d >= 0)
    return ModuliDims(prime, prime - sum(1 for d in degrees if d < 0))


def incidence_lower_bound(sections: int, degrees) -> int:
    return (sections - 1) + moduli_dims(degrees).dim_m - 1 - sum(degrees)


def pgl2_upper(sections: int) -> int:
    return (sections - 1) + 3


def rigidity_chain_equal(degrees, sections: int = 1) -> bool:
    """Both ends of the incidence dimension chain agree.

    The difference is independent of the section count, so any positive
    count may be passed.
    """
    return incidence_lower_bound(sections, degrees) == pgl2_upper(sections)


def pair_moduli_dim(t_i, t_j) -> int:
    """Expected dimension of the family of meeting pairs (codimension 2)."""
    return moduli_dims(t_i).dim_m + moduli_dims(t_j).dim_m - 2


# ---------------------------------------------------------------------------
# pair cases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparatingForm:
    """Monomial ``X^exps`` times slot forms evaluated at pairs of variables."""

    exps: tuple[int, ...]
    factors: tuple[tuple[str, tuple[int, int]], ...] = ()

    def restrict(self, values: dict, curve: RationalCurve) -> BinaryForm:
        out = restrict_section(CoxPolynomial({self.exps: 1}), curve)
        for name, (a, b) in self.factors:
            if out.is_zero:
                break
            out = out * values[name].compose(curve.forms[a], curve.forms[b])
        return out

    def multidegree(self, cg: ClassGroupData, slot_degrees: dict) -> tuple[int, ...]:
        deg = list(cg.degree_of(self.exps))
        for name, (a, b) in self.factors:
            if cg.weights[a] != cg.weights[b]:
                raise ValueError(f"slot {name} sits on variables of different weights")
            for j in range(cg.rank):
                deg[j] += slot_degrees[name] * cg.weights[a][j]
        return tuple(deg)


@dataclass(frozen=True)
class PairCase:
    """A pair of curve families on one variety together with its form list.

    ``templates`` hold, per ray, ``None`` (ZERO), a coefficient tuple, or a
    slot name.  ``status`` is ``"check"`` for cases with separating forms,
    ``"empty"`` when a coordinate witness shows the curves never meet, and
    ``"fails"`` when no form list exists.
    """

    variety: str
    pair: str
    branch: str
    status: str
    types: tuple[tuple[int, ...], tuple[int, ...]]
    templates: tuple[tuple, tuple]
    slots: dict = field(default_factory=dict)
    side_conditions: tuple = ()
    constructed: tuple = ()
    forms: tuple[SeparatingForm, ...] = ()
    completion: dict | None = None
    stated_dim: int | None = None
    stated_dim_bound: bool = False
    dimension_anomaly: bool = False
    formula_dim: int | None = None
    witness: int | None = None
    source: str = "transcribed"

    @property
    def label(self) -> str:
        return f"{self.variety} {self.pair}" + (f" [{self.branch}]" if self.branch else "")

    def slot_degrees(self) -> dict:
        out = dict(self.slots)
        for c in self.constructed:
            for name in c.get("names", [c.get("name")]):
                out[name] = c["degree"]
        return out


@dataclass(frozen=True)
class SeparationResult:
    seed: int
    rank: int
    required: int
    passed: bool
    forms: int = 0


class SideConditionError(RuntimeError):
    """Side conditions could not be met within the retry budget."""


def random_rational(rng: random.Random, height: int = MAX_HEIGHT) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_form(rng: random.Random, degree: int) -> BinaryForm:
    while True:
        f = BinaryForm(degree, [random_rational(rng) for _ in range(degree + 1)])
        if not f.is_zero and f.coeffs[0] and f.coeffs[-1]:
            return f


def _gcd_degree(f: BinaryForm, g: BinaryForm) -> int:
    return bf_gcd_set([f, g]).degree


def construct_coprime_form(degree: int, avoid, seed) -> BinaryForm:
    """Seeded form of the given degree sharing no factor with any ``avoid``."""
    if any(a.is_zero for a in avoid):
        raise ValueError("avoid forms must be nonzero")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(MAX_RETRIES):
        f = random_form(rng, degree)
        if all(_gcd_degree(f, a) == 0 for a in avoid):
            return f
    raise SideConditionError(f"no degree {degree} form coprime to {len(avoid)} given forms")


def construct_independent(degree: int, given, count: int, seed) -> list[BinaryForm]:
    """``count`` forms that extend ``given`` to a linearly independent set."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    base = list(given)
    if forms_rank(base, degree) != len(base):
        raise SideConditionError("given forms are already dependent")
    out = []
    for _ in range(MAX_RETRIES):
        if len(out) == count:
            return out
        f = random_form(rng, degree)
        if forms_rank(base + out + [f], degree) == len(base) + len(out) + 1:
            out.append(f)
    raise SideConditionError("could not complete to an independent set")


def _mul(forms) -> BinaryForm:
    out = ONE
    for f in forms:
        out = out * f
    return out


def _sample_slots(case: PairCase, rng: random.Random) -> dict | None:
    values = {}
    split = {}  # slots built as products of linear factors
    gcd_conds = [c["gcd_degree"] for c in case.side_conditions if "gcd_degree" in c]
    partners = {b: (a, k) for a, b, k in gcd_conds}
    for name, deg in case.slots.items():
        if name in partners:
            a, k = partners[name]
            shared = split[a][:k]
            rest = [random_form(rng, deg - k)] if deg > k else []
            values[name] = _mul(shared + rest)
        elif any(a == name for a, _, _ in gcd_conds):
            split[name] = [random_form(rng, 1) for _ in range(deg)]
            values[name] = _mul(split[name])
        else:
            values[name] = random_form(rng, deg)
    for cond in case.side_conditions:
        if "coprime" in cond:
            a, b = cond["coprime"]
            if _gcd_degree(values[a], values[b]) != 0:
                return None
        elif "gcd_degree" in cond:
            a, b, k = cond["gcd_degree"]
            if _gcd_degree(values[a], values[b]) != k:
                return None
        else:
            raise ValueError(f"unknown side condition {cond}")
    for c in case.constructed:
        if c["kind"] == "coprime":
            avoid = [values[n] for n in c["avoid"]]
            values[c["name"]] = construct_coprime_form(c["degree"], avoid, rng)
        elif c["kind"] == "independent":
            given = [_mul(values[n] for n in names) for names in c["with"]]
            for name, f in zip(c["names"], construct_independent(c["degree"], given, len(c["names"]), rng)):
                values[name] = f
        else:
            raise ValueError(f"unknown construction {c['kind']!r}")
    return values


def instantiate(case: PairCase, seed, overrides: dict | None = None):
    """Random members of the two families; returns ``(values, (C_a, C_b))``."""
    rng = random.Random(f"{seed}|{case.variety}|{case.pair}|{case.branch}")
    for _ in range(MAX_RETRIES):
        values = _sample_slots(case, rng)
        if values is None:
            continue
        if overrides:
            values.update(overrides)
        curves = tuple(_curve_from_template(t, d, values) for t, d in zip(case.templates, case.types))
        return values, curves
    raise SideConditionError(f"{case.label}: side conditions unsatisfiable after {MAX_RETRIES} tries")


def _curve_from_template(template, degrees, values) -> RationalCurve:
    forms = []
    for entry, d in zip(template, degrees):
        if entry is None:
            forms.append(ZERO)
        elif isinstance(entry, str):
            forms.append(values[entry])
        else:
            forms.append(BinaryForm(d, entry))
    return RationalCurve(tuple(forms), tuple(degrees))


def restricted_span_dim(forms, curve: RationalCurve, values: dict | None = None) -> int:
    """Dimension of the span of the restrictions of ``forms`` to ``curve``."""
    values = values or {}
    rows = [f.restrict(values, curve).vector(curve.total_degree) for f in forms]
    return rat_rank(rows) if rows else 0


def complete_forms(fan: Fan, forms, curve: RationalCurve, count: int, values: dict) -> list[SeparatingForm]:
    """Greedily add anticanonical monomials raising the span on ``curve``."""
    chosen = list(forms)
    rank = restricted_span_dim(chosen, curve, values)
    extra = []
    for exps in anticanonical_monomials(fan):
        if len(extra) == count:
            break
        cand = SeparatingForm(exps)
        r = restricted_span_dim(chosen + [cand], curve, values)
        if r > rank:
            chosen.append(cand)
            extra.append(cand)
            rank = r
    if len(extra) != count:
        raise SideConditionError("completion ran out of monomials")
    return extra


def joint_matrix(forms, curves, values) -> list[list[Fraction]]:
    rows = []
    for f in forms:
        row = []
        for c in curves:
            row.extend(f.restrict(values, c).vector(c.total_degree))
        rows.append(row)
    return rows


def separation_check(case: PairCase, seed, fan: Fan | None = None, drop: int | None = None) -> SeparationResult:
    """Exact rank of the joint restriction matrix for one random instance.

    ``drop`` removes one listed form (used as a negative control).
    """
    if case.status != "check":
        raise ValueError(f"{case.label} has no separating forms ({case.status})")
    values, curves = instantiate(case, seed)
    forms = list(case.forms)
    if case.completion:
        if fan is None:
            raise ValueError(f"{case.label} needs the fan to complete its form list")
        forms += complete_forms(fan, forms, curves[case.completion["curve"]],
                                case.completion["count"], values)
    if drop is not None:
        del forms[drop]
    rank = rat_rank(joint_matrix(forms, curves, values))
    required = case.stated_dim - 5 if case.stated_dim is not None else len(forms)
    return SeparationResult(seed if isinstance(seed, int) else 0, rank, required,
                            rank == len(forms) and len(forms) >= required, len(forms))


def form_count(case: PairCase) -> int:
    return len(case.forms) + (case.completion["count"] if case.completion else 0)
