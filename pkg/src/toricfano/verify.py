"""End-to-end verification of varieties, curve certificates and pair cases.

Every function here returns plain dictionaries so that reports serialize
deterministically; ordering always follows the corpus, never completion
order of parallel work.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .chow import betti_profile
from .corpus import Certificate, VarietyBundle
from .cox import TorsionError, anticanonical_points, class_group, is_anticanonical, weights_match
from .curves import (
    DegenerateConfiguration,
    all_nonzero_relation,
    avoids_exceptional,
    classes_generate,
    curve_class,
    disjointness_witnesses,
    format_class,
    h0_normal,
    h0_twisted,
    immersion_check,
    injectivity_witness,
    lies_on,
    smooth_along,
    validate_type,
)
from .fan import VarietySpec, fano_violations, folded_walls, is_complete, is_smooth, unmatched_facet, violated_relations
from .moduli import (
    PairCase,
    form_count,
    instantiate,
    pair_moduli_dim,
    rigidity_chain_equal,
    separation_check,
)

DEFAULT_TRIALS = 20


def validate_variety(spec: VarietySpec) -> dict:
    fan = spec.fan
    out = {"name": spec.name, "rays": fan.n_rays, "cones": len(fan.maximal_cones)}
    out["smooth"] = is_smooth(fan)
    facet = unmatched_facet(fan)
    out["complete"] = facet is None and is_complete(fan)
    if facet is not None:
        out["unmatched_facet"] = list(facet) if facet[0] != "disconnected" else "disconnected"
    folded = folded_walls(fan) if facet is None else []
    if folded:
        out["folded_walls"] = [list(w) for w in folded]
    bad_walls = fano_violations(fan) if out["complete"] else []
    out["fano"] = out["complete"] and not bad_walls
    if bad_walls:
        out["fano_violations"] = [list(w) for w in bad_walls]
    out["violated_relations"] = violated_relations(spec)
    try:
        cg = class_group(fan, spec.basis_rays)
        out["class_group_rank"] = cg.rank
        out["weights_match"] = weights_match(cg, spec.weights) if spec.weights else None
    except TorsionError as exc:
        out["class_group_rank"] = None
        out["class_group_error"] = str(exc)
        out["weights_match"] = False
    if out["complete"] and out["fano"]:
        out["sections"] = len(anticanonical_points(fan))
    else:
        out["sections"] = None
    expected = spec.expected.get("sections")
    checks = [out["smooth"], out["complete"], out["fano"], not out["violated_relations"],
              out["class_group_rank"] == fan.n_rays - 4, out["weights_match"] is not False,
              expected is None or out["sections"] == expected]
    out["passed"] = all(checks)
    return out


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

STAGES = ("type", "class", "anticanonical", "avoids_exceptional", "membership", "smooth_along",
          "immersion", "injectivity", "normal_bundle", "splitting")


def verify_certificate(spec: VarietySpec, cert: Certificate) -> dict:
    fan = spec.fan
    cg = class_group(fan, spec.basis_rays)
    curve, F = cert.curve, cert.hypersurface
    row = {"label": cert.label, "curve": str(curve), "type": list(curve.degrees),
           "class": format_class(cert.declared_class, spec.basis_rays), "checks": {}}
    checks = row["checks"]

    def fail(stage, detail):
        row["failed_stage"] = stage
        row["detail"] = detail
        row["passed"] = False
        return row

    checks["type"] = validate_type(fan, curve.degrees)
    if not checks["type"]:
        return fail("type", "sum of d_rho n_rho is not zero")
    try:
        computed = curve_class(cg, curve)
    except ValueError as exc:
        checks["class"] = False
        return fail("class", str(exc))
    checks["class"] = computed == tuple(cert.declared_class)
    if not checks["class"]:
        return fail("class", f"computed {list(computed)}, declared {list(cert.declared_class)}")
    checks["anticanonical"] = is_anticanonical(cg, F)
    if not checks["anticanonical"]:
        return fail("anticanonical", f"hypersurface {F} is not anticanonical")
    checks["avoids_exceptional"] = avoids_exceptional(fan, curve)
    if not checks["avoids_exceptional"]:
        return fail("avoids_exceptional", "curve meets the exceptional set")
    checks["membership"] = lies_on(F, curve)
    if not checks["membership"]:
        return fail("membership", "restriction of F to the curve is not zero")
    checks["smooth_along"] = smooth_along(F, curve)
    if not checks["smooth_along"]:
        return fail("smooth_along", "restricted gradient has a common zero")
    checks["immersion"] = immersion_check(cg, curve)
    if not checks["immersion"]:
        return fail("immersion", "velocity falls into the orbit directions somewhere")
    witness = injectivity_witness(cg, curve)
    checks["injectivity"] = witness is not None
    if witness is None:
        return fail("injectivity", "no degree-one character found")
    row["injectivity_witness"] = list(witness)
    try:
        nb = h0_normal(fan, cg, F, curve)
        twisted = h0_twisted(fan, cg, F, curve, 1)
    except DegenerateConfiguration as exc:
        checks["normal_bundle"] = False
        return fail("normal_bundle", str(exc))
    checks["normal_bundle"] = nb.dim_gauge_tangent == 5
    row.update(dim_ker=nb.dim_ker, dim_v=nb.dim_gauge_tangent, h0=nb.h0,
               splitting=list(nb.splitting), h0_twisted_1=twisted)
    checks["splitting"] = tuple(nb.splitting) == tuple(cert.expected_splitting)
    if not checks["splitting"]:
        return fail("splitting", f"computed {list(nb.splitting)}, expected {list(cert.expected_splitting)}")
    row["passed"] = True
    return row


def _verify_certificate_task(args):
    return verify_certificate(*args)


# ---------------------------------------------------------------------------
# pair cases
# ---------------------------------------------------------------------------

def pair_rows(pair: str) -> tuple[int, int]:
    """``"C1C3"`` -> ``(0, 2)``: certificate rows named by a pair label."""
    return int(pair[1]) - 1, int(pair[3]) - 1


def dimension_status(stated_dim, formula_dim, bound: bool = False) -> str | None:
    if stated_dim is None or formula_dim is None:
        return None
    if bound:
        return "bound" if formula_dim >= stated_dim else "mismatch"
    return "match" if stated_dim == formula_dim else "mismatch"


def verify_paircase(spec: VarietySpec, case: PairCase, seeds, row_types=None) -> dict:
    cg = class_group(spec.fan, spec.basis_rays)
    formula = case.formula_dim
    if row_types is not None:
        i, j = pair_rows(case.pair)
        formula = pair_moduli_dim(row_types[i], row_types[j])
    out = {"label": case.label, "pair": case.pair, "branch": case.branch, "status": case.status,
           "source": case.source, "stated_dim": case.stated_dim, "formula_dim": formula,
           "dimension": dimension_status(case.stated_dim, formula, case.stated_dim_bound)}
    if case.formula_dim is not None and formula != case.formula_dim:
        out["stored_formula_dim"] = case.formula_dim
    # a flagged anomaly must mismatch, and nothing else may
    out["dimension_ok"] = (out["dimension"] == "mismatch") == case.dimension_anomaly
    if case.status == "fails":
        out["expected_failure"] = True
        out["passed"] = out["dimension_ok"]
        return out
    if case.status == "empty":
        _, curves = instantiate(case, seeds[0])
        found = disjointness_witnesses(*curves)
        out["witness"] = None if case.witness is None else f"X{case.witness + 1}"
        out["passed"] = case.witness in found and out["dimension_ok"]
        return out
    degrees = case.slot_degrees()
    out["anticanonical"] = all(f.multidegree(cg, degrees) == cg.anticanonical for f in case.forms)
    out["forms"] = form_count(case)
    out["required"] = case.stated_dim - 5 if case.stated_dim is not None else None
    results = [separation_check(case, s, spec.fan) for s in seeds]
    out["ranks"] = sorted({r.rank for r in results})
    out["seeds_passed"] = sum(r.passed for r in results)
    out["seeds"] = len(results)
    if out["required"] is not None and out["forms"] != out["required"]:
        out["surplus_forms"] = out["forms"] - out["required"]
    out["passed"] = out["anticanonical"] and out["seeds_passed"] == len(results) \
        and "stored_formula_dim" not in out and out["dimension_ok"]
    return out


def _verify_paircase_task(args):
    return verify_paircase(*args)


# ---------------------------------------------------------------------------
# varieties
# ---------------------------------------------------------------------------

def _map(fn, jobs, items):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))  # map preserves input order
    return [fn(x) for x in items]


def certificate_aggregates(spec: VarietySpec, certs) -> dict:
    classes = [tuple(c.declared_class) for c in certs]
    relation = all_nonzero_relation(classes) if len(classes) >= 2 else None
    return {
        "classes": [format_class(c, spec.basis_rays) for c in classes],
        "generate": classes_generate(classes) if classes else False,
        "relation": list(relation) if relation else None,
        "rigidity_chain": [rigidity_chain_equal(c.curve.degrees) for c in certs],
    }


def verify_rows(spec: VarietySpec, certs, jobs: int = 1) -> dict:
    rows = _map(_verify_certificate_task, jobs, [(spec, c) for c in certs])
    agg = certificate_aggregates(spec, certs)
    passed = all(r["passed"] for r in rows) and agg["generate"] and agg["relation"] is not None \
        and all(agg["rigidity_chain"])
    return {"variety": spec.name, "rows": rows, **agg, "passed": passed}


def copies_entry(spec: VarietySpec) -> dict:
    p = betti_profile(spec.fan)
    expected = spec.expected.get("copies")
    return {"variety": spec.name, "euler": p.euler, "betti": list(p.betti), "copies": p.copies,
            "expected": expected, "informational": expected is None,
            "passed": expected is None or expected == p.copies}


def seeds_for(seed: int, trials: int) -> list[int]:
    return [seed + k for k in range(trials)]


def verify_pairs(spec: VarietySpec, cases, seed: int = 0, trials: int = DEFAULT_TRIALS, jobs: int = 1,
                 certificates=None) -> list:
    seeds = seeds_for(seed, trials)
    types = [c.curve.degrees for c in certificates] if certificates else None
    return _map(_verify_paircase_task, jobs, [(spec, c, seeds, types) for c in cases])


def corpus_table(bundles, seed: int = 0, trials: int = DEFAULT_TRIALS, jobs: int = 1) -> dict:
    copies = [copies_entry(b.spec) for b in bundles]
    pairs = []
    for b in bundles:
        pairs.extend(verify_pairs(b.spec, b.paircases, seed, trials, jobs, b.certificates))
    mismatches = sorted({(p["label"].split(" [")[0]) for p in pairs if p["dimension"] == "mismatch"})
    matched = sorted({p["label"].split(" [")[0] for p in pairs if p["dimension"] == "match"})
    return {
        "version": __version__,
        "seed": seed,
        "trials": trials,
        "copies": copies,
        "pairs": pairs,
        "dimension_matches": len(matched),
        "dimension_mismatches": mismatches,
        "passed": all(c["passed"] for c in copies) and all(p["passed"] for p in pairs),
    }


def full_report(bundles: list[VarietyBundle], seed: int = 0, trials: int = DEFAULT_TRIALS, jobs: int = 1) -> dict:
    varieties = []
    for b in bundles:
        varieties.append({
            "validation": validate_variety(b.spec),
            "certificates": verify_rows(b.spec, b.certificates, jobs),
        })
    table = corpus_table(bundles, seed, trials, jobs)
    passed = table["passed"] and all(v["validation"]["passed"] and v["certificates"]["passed"]
                                     for v in varieties)
    return {"version": __version__, "seed": seed, "trials": trials, "varieties": varieties,
            "table": table, "passed": passed}
