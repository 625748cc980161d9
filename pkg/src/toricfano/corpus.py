"""JSON corpus: varieties, curve certificates and pair cases.

Each variety lives in its own directory holding ``variety.json``,
``certificates.json`` and ``paircases.json``.  Rationals are written as
``"p/q"`` strings (``"p"`` when integral) so that files are exact and
diffable.  :func:`dumps` is canonical: loading a corpus file and writing
it back reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cox import CoxPolynomial
from .curves import RationalCurve
from .exact import ZERO, BinaryForm, format_rational, parse_rational
from .fan import Fan, FanError, VarietySpec
from .moduli import PairCase, SeparatingForm

ORDER = ("B1", "B2", "B3", "B4", "B5", "C1", "C2", "C3", "C4")


class CorpusError(ValueError):
    """Malformed corpus data."""


@dataclass(frozen=True)
class Certificate:
    variety: str
    index: int
    curve: RationalCurve
    declared_class: tuple[int, ...]
    hypersurface: CoxPolynomial
    expected_splitting: tuple[int, int]
    source: str = "transcribed"

    @property
    def label(self) -> str:
        return f"{self.variety} row {self.index}"


@dataclass(frozen=True)
class VarietyBundle:
    spec: VarietySpec
    certificates: tuple[Certificate, ...]
    paircases: tuple[PairCase, ...]


# ---------------------------------------------------------------------------
# canonical JSON text
# ---------------------------------------------------------------------------

def _scalar(x) -> bool:
    return x is None or isinstance(x, (bool, int, float, str))


def _flat(x) -> bool:
    return _scalar(x) or (isinstance(x, list) and all(_flat(v) for v in x) and
                          sum(1 for v in x if isinstance(v, list)) <= 8)


def _emit(obj, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if _scalar(obj):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if _flat(obj) and len(json.dumps(obj)) <= 100:
            return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))
        return "[\n" + ",\n".join(inner + _emit(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        one_line = json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))
        if len(one_line) <= 100 and all(_flat(v) for v in obj.values()):
            return one_line
        items = (inner + json.dumps(k) + ": " + _emit(v, indent + 1) for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return _emit(obj, 0) + "\n"


# ---------------------------------------------------------------------------
# varieties
# ---------------------------------------------------------------------------

def _require(data: dict, *keys):
    missing = [k for k in keys if k not in data]
    if missing:
        raise CorpusError(f"missing field(s) {missing}")


def variety_from_json(data: dict) -> VarietySpec:
    _require(data, "name", "rays", "max_cones")
    try:
        fan = Fan(tuple(map(tuple, data["rays"])), tuple(map(tuple, data["max_cones"])))
    except (FanError, TypeError) as exc:
        raise CorpusError(f"{data.get('name')}: {exc}") from exc
    relations = tuple((tuple(r["lhs"]), tuple(r["rhs"])) for r in data.get("relations", []))
    return VarietySpec(
        name=data["name"],
        fan=fan,
        relations=relations,
        weights=tuple(tuple(w) for w in data.get("weights", [])),
        basis_rays=tuple(data.get("basis_rays", (3, 4))),
        expected=dict(data.get("expected", {})),
        source=dict(data.get("source", {})),
    )


def variety_to_json(spec: VarietySpec) -> dict:
    out = {
        "name": spec.name,
        "rays": [list(r) for r in spec.fan.rays],
        "max_cones": [list(c) for c in spec.fan.maximal_cones],
        "relations": [{"lhs": list(l), "rhs": list(r)} for l, r in spec.relations],
        "weights": [list(w) for w in spec.weights],
        "basis_rays": list(spec.basis_rays),
    }
    if spec.expected:
        out["expected"] = dict(spec.expected)
    if spec.source:
        out["source"] = dict(spec.source)
    return out


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def _form_from_json(entry, degree) -> BinaryForm:
    if entry is None:
        return ZERO
    coeffs = [parse_rational(c) for c in entry]
    if len(coeffs) != degree + 1:
        raise CorpusError(f"form {entry} does not have degree {degree}")
    f = BinaryForm(degree, coeffs)
    if f.is_zero:
        raise CorpusError("write identically zero forms as null")
    return f


def _form_to_json(f: BinaryForm):
    return None if f.is_zero else [format_rational(c) for c in f.coeffs]


def certificate_from_json(variety: str, index: int, data: dict) -> Certificate:
    _require(data, "type", "forms", "class", "hypersurface")
    degrees = tuple(data["type"])
    try:
        forms = tuple(_form_from_json(e, d) for e, d in zip(data["forms"], degrees))
        curve = RationalCurve(forms, degrees)
        F = CoxPolynomial.from_terms((tuple(t["exps"]), parse_rational(t["coeff"]))
                                     for t in data["hypersurface"])
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise CorpusError(f"{variety} row {index}: {exc}") from exc
    return Certificate(
        variety=variety,
        index=index,
        curve=curve,
        declared_class=tuple(data["class"]),
        hypersurface=F,
        expected_splitting=tuple(data.get("expected_splitting", (-1, -1))),
        source=data.get("source", "transcribed"),
    )


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "type": list(cert.curve.degrees),
        "forms": [_form_to_json(f) for f in cert.curve.forms],
        "class": list(cert.declared_class),
        "hypersurface": [{"exps": list(e), "coeff": format_rational(c)}
                         for e, c in cert.hypersurface.terms.items()],
        "expected_splitting": list(cert.expected_splitting),
        "source": cert.source,
    }


# ---------------------------------------------------------------------------
# pair cases
# ---------------------------------------------------------------------------

def _template_entry(entry):
    if entry is None or isinstance(entry, str):
        return entry
    return tuple(parse_rational(c) for c in entry)


def _template_to_json(entry):
    if entry is None or isinstance(entry, str):
        return entry
    return [format_rational(c) for c in entry]


def paircase_from_json(variety: str, data: dict) -> PairCase:
    _require(data, "pair", "status", "types", "templates")
    if data["status"] not in ("check", "empty", "fails"):
        raise CorpusError(f"{variety} {data['pair']}: unknown status {data['status']!r}")
    forms = tuple(
        SeparatingForm(tuple(f["exps"]), tuple((n, tuple(v)) for n, v in f.get("factors", [])))
        for f in data.get("forms", []))
    return PairCase(
        variety=variety,
        pair=data["pair"],
        branch=data.get("branch", ""),
        status=data["status"],
        types=tuple(tuple(t) for t in data["types"]),
        templates=tuple(tuple(_template_entry(e) for e in t) for t in data["templates"]),
        slots=dict(data.get("slots", {})),
        side_conditions=tuple(data.get("side_conditions", [])),
        constructed=tuple(data.get("constructed", [])),
        forms=forms,
        completion=data.get("completion"),
        stated_dim=data.get("stated_dim"),
        stated_dim_bound=data.get("stated_dim_bound", False),
        dimension_anomaly=data.get("dimension_anomaly", False),
        formula_dim=data.get("formula_dim"),
        witness=data.get("witness"),
        source=data.get("source", "transcribed"),
    )


def paircase_to_json(case: PairCase) -> dict:
    out = {"pair": case.pair}
    if case.branch:
        out["branch"] = case.branch
    out["status"] = case.status
    out["source"] = case.source
    out["types"] = [list(t) for t in case.types]
    out["templates"] = [[_template_to_json(e) for e in t] for t in case.templates]
    if case.slots:
        out["slots"] = dict(case.slots)
    if case.side_conditions:
        out["side_conditions"] = list(case.side_conditions)
    if case.constructed:
        out["constructed"] = list(case.constructed)
    if case.forms:
        out["forms"] = [
            {"exps": list(f.exps), **({"factors": [[n, list(v)] for n, v in f.factors]} if f.factors else {})}
            for f in case.forms]
    if case.completion:
        out["completion"] = dict(case.completion)
    if case.stated_dim is not None:
        out["stated_dim"] = case.stated_dim
    if case.stated_dim_bound:
        out["stated_dim_bound"] = True
    if case.dimension_anomaly:
        out["dimension_anomaly"] = True
    for key in ("formula_dim", "witness"):
        if getattr(case, key) is not None:
            out[key] = getattr(case, key)
    return out


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

def default_root() -> Path:
    return Path(str(resources.files("toricfano") / "data"))


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"{path}: {exc}") from exc


def load_variety(path) -> VarietySpec:
    return variety_from_json(read_json(path))


def load_certificates(path) -> tuple[Certificate, ...]:
    data = read_json(path)
    _require(data, "variety", "curves")
    return tuple(certificate_from_json(data["variety"], i + 1, c) for i, c in enumerate(data["curves"]))


def load_paircases(path) -> tuple[PairCase, ...]:
    data = read_json(path)
    _require(data, "variety", "cases")
    return tuple(paircase_from_json(data["variety"], c) for c in data["cases"])


def certificates_document(variety: str, certs) -> dict:
    return {"variety": variety, "curves": [certificate_to_json(c) for c in certs]}


def paircases_document(variety: str, cases) -> dict:
    return {"variety": variety, "cases": [paircase_to_json(c) for c in cases]}


def load_bundle(directory) -> VarietyBundle:
    d = Path(directory)
    spec = load_variety(d / "variety.json")
    certs = load_certificates(d / "certificates.json")
    pairs = load_paircases(d / "paircases.json") if (d / "paircases.json").exists() else ()
    return VarietyBundle(spec, certs, pairs)


def load_corpus(root=None) -> list[VarietyBundle]:
    root = Path(root) if root is not None else default_root()
    if not root.is_dir():
        raise CorpusError(f"corpus directory {root} not found")
    names = sorted((p.name for p in root.iterdir() if (p / "variety.json").exists()),
                   key=lambda n: (ORDER.index(n) if n in ORDER else len(ORDER), n))
    if not names:
        raise CorpusError(f"no varieties under {root}")
    return [load_bundle(root / n) for n in names]


def write_bundle(directory, bundle: VarietyBundle) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    name = bundle.spec.name
    (d / "variety.json").write_text(dumps(variety_to_json(bundle.spec)), encoding="utf-8")
    (d / "certificates.json").write_text(dumps(certificates_document(name, bundle.certificates)),
                                         encoding="utf-8")
    (d / "paircases.json").write_text(dumps(paircases_document(name, bundle.paircases)),
                                      encoding="utf-8")
