"""Input records and the JSON analysis report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from .core.poly import IntPoly
from .errors import (
    CombinatorialExplosion,
    Inconclusive,
    IncompleteLattice,
    NotApplicable,
    PrecisionExhausted,
    ValidationError,
)
from .invariants import degree_two_generation, pole_orders, transcendental_split, weight_system
from .primes import enumerate_PX
from .torus.lattice import character_lattice
from .torus.regularity import regularity
from .torus.relations import relation_lattice
from .weil.newton_polygon import is_ordinary, newton_polygon
from .weil.padic import prime_profile
from .weil.weilpoly import validate

SCHEMA_VERSION = "1.0"
HYPOTHESES = ("none", "k3", "abelian")
TIMESTAMP_FIELDS = ("generated_at",)


@dataclass(frozen=True)
class InputRecord:
    id: str
    q: int
    m: int
    coeffs: tuple  # ascending: constant term first
    label: str | None = None
    hypothesis: str = "none"

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("coeffs must be nonempty")
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError("q must be an integer >= 2")
        if not isinstance(self.m, int) or self.m < 0:
            raise ValueError("m must be a nonnegative integer")
        if any(not isinstance(c, int) or isinstance(c, bool) for c in self.coeffs):
            raise ValueError("coeffs must be integers")
        if self.hypothesis not in HYPOTHESES:
            raise ValueError(f"hypothesis must be one of {HYPOTHESES}")

    @classmethod
    def from_dict(cls, d: dict, default_id: str = "") -> "InputRecord":
        if not isinstance(d, dict):
            raise ValueError("record must be a JSON object")
        for key in ("q", "coeffs"):
            if key not in d:
                raise ValueError(f"record lacks field {key!r}")
        return cls(
            id=str(d.get("id", default_id)),
            q=d["q"],
            m=d.get("m", 1),
            coeffs=tuple(d["coeffs"]),
            label=d.get("label"),
            hypothesis=d.get("hypothesis", "none"),
        )

    def to_dict(self) -> dict:
        out = {"id": self.id, "q": self.q, "m": self.m, "coeffs": list(self.coeffs)}
        if self.label is not None:
            out["label"] = self.label
        if self.hypothesis != "none":
            out["hypothesis"] = self.hypothesis
        return out


@dataclass
class AnalysisReport:
    input: dict
    validation: dict
    schema_version: str = SCHEMA_VERSION
    generated_at: str = ""
    newton_polygon: dict | None = None
    ordinary: dict | None = None
    prime_profile: dict | None = None
    character_lattice: dict | None = None
    relation_lattice: dict | None = None
    angle_rank: int | None = None
    regularity: dict | None = None
    invariants: dict | None = None
    pole_orders: dict | None = None
    transcendental: dict | None = None
    prime_set: dict | None = None
    conclusion: dict | None = None
    errors: list = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def valid(self) -> bool:
        return self.validation.get("status") == "valid"

    @property
    def exit_code(self) -> int:
        if not self.valid:
            return 2
        return 1 if self.budget_exhausted else 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def now_stamp() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def strip_timestamps(d):
    """Copy of a report dict without the timestamp fields (for golden comparisons and hashing)."""
    if isinstance(d, dict):
        return {k: strip_timestamps(v) for k, v in d.items() if k not in TIMESTAMP_FIELDS}
    if isinstance(d, list):
        return [strip_timestamps(v) for v in d]
    return d


def conclusion_text(verdict: dict | None, hypothesis: str, budget_exhausted: bool) -> dict:
    """Conditional statement about the Tate conjecture; never unconditional unless the record grants it."""
    if verdict is None:
        reason = "relation search budget exhausted" if budget_exhausted else "regularity not decided"
        return {"status": "undecided", "text": f"No conclusion: {reason}."}
    if not verdict["regular"]:
        return {
            "status": "no_conclusion",
            "text": f"No conclusion: Frobenius does not generate its torus ({verdict['reason']}).",
        }
    if hypothesis == "none":
        return {
            "status": "conditional",
            "text": "Frobenius generates its torus. Conditional: if X^2 in weight m satisfies the "
            "Tate conjecture, then every tensor power of X does.",
        }
    return {
        "status": "granted",
        "text": f"Frobenius generates its torus. The record grants the Tate conjecture for X^2 in "
        f"weight m (hypothesis: {hypothesis}), so every tensor power of X satisfies it.",
    }


def _err(stage: str, exc: Exception) -> dict:
    return {"stage": stage, "type": type(exc).__name__, "message": str(exc)}


def analyze(
    record: InputRecord,
    n_max: int = 4,
    primes_bound: int = 1000,
    sections=("newton", "regularity", "invariants", "poles", "primes"),
    galois_samples: int = 500,
    timestamp: str | None = None,
) -> AnalysisReport:
    """Run the pipeline on one record; failures of later stages are recorded, not raised."""
    rep = AnalysisReport(input=record.to_dict(), validation={}, generated_at=timestamp or now_stamp())
    try:
        w = validate(IntPoly(record.coeffs), record.q, record.m)
    except ValidationError as exc:
        rep.validation = {"status": "rejected", **exc.to_dict()}
        return rep
    rep.validation = {"status": "valid", "weil": w.to_dict()}

    if "newton" in sections or "regularity" in sections:
        rep.newton_polygon = newton_polygon(w).to_dict()
        try:
            rep.ordinary = is_ordinary(w).to_dict()
        except NotApplicable as exc:
            rep.ordinary = {"ordinary": None, "why": str(exc)}
        try:
            rep.prime_profile = prime_profile(w).to_dict()
        except (PrecisionExhausted, NotApplicable) as exc:
            rep.errors.append(_err("prime_profile", exc))

    rl = None
    if {"regularity", "poles"} & set(sections):
        rep.character_lattice = character_lattice(w).to_dict()
        rl = relation_lattice(w)
        rep.relation_lattice = rl.to_dict()
        if not rl.complete:
            rep.budget_exhausted = True

    verdict = None
    if "regularity" in sections:
        try:
            v = regularity(w, lattice=rl, galois_samples=galois_samples)
            verdict = {k: val for k, val in v.to_dict().items() if k != "lattice"}
            rep.regularity = verdict
            rep.angle_rank = v.angle_rank
        except Inconclusive as exc:
            rep.errors.append(_err("regularity", exc))
        rep.conclusion = conclusion_text(verdict, record.hypothesis, rep.budget_exhausted)

    if "invariants" in sections:
        try:
            rep.invariants = degree_two_generation(weight_system(w), max(n_max, 2)).to_dict()
        except CombinatorialExplosion as exc:
            rep.errors.append(_err("invariants", exc))
        if w.m % 2 == 0:
            rep.transcendental = transcendental_split(w).to_dict()

    if "poles" in sections:
        try:
            rep.pole_orders = pole_orders(w, rl, n_max).to_dict()
        except IncompleteLattice as exc:
            rep.errors.append(_err("pole_orders", exc))

    if "primes" in sections:
        rep.prime_set = enumerate_PX(w, primes_bound).to_dict()
    return rep
