"""Regularity of Frobenius: does pi/q^(m/2) generate its torus?

The verdict comes from the relation lattice.  Three sufficient criteria are
evaluated alongside it:

* ``criterion_height_one``: one degree-1 prime of slope 0, its conjugate of
  slope m, every other prime of slope m/2;
* ``criterion_half_slope``: a conjugation-stable degree-2 prime of slope m/2,
  every other prime of slope 0 or m;
* ``criterion_ordinary_galois``: for each conjugate pair some Galois element
  fixes the pair and acts as conjugation on the other roots.

The first and third short-circuit the verdict only when the squarefree part is
irreducible.  For products of fields the per-factor conditions miss relations
between factors.  The second never short-circuits: the supersingular ``t^2 + p``
satisfies it and is still not regular.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from ..errors import Inconclusive, NotApplicable, PrecisionExhausted
from ..weil.newton_polygon import is_ordinary, newton_polygon_of
from ..weil.padic import PadicPrimeProfile, prime_profile
from ..weil.weilpoly import WeilPolynomial
from .relations import ONE, RelationLattice, relation_lattice

DEFAULT_GALOIS_SAMPLES = 500


@dataclass(frozen=True)
class Certificate:
    name: str
    status: str  # Holds | Fails | Verified | HeuristicHolds | NotApplicable
    implies_regular: bool = False
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status in ("Holds", "Verified")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "holds": self.holds,
            "implies_regular": self.implies_regular,
            "details": self.details,
        }


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    reason: str  # LatticeTrivial | Criterion15 | Criterion17 | TorsionObstruction | ExtraRelation
    angle_rank: int
    witness: dict | None
    lattice: RelationLattice
    criteria: dict
    flags: tuple = ()

    def to_dict(self) -> dict:
        return {
            "regular": self.regular,
            "reason": self.reason,
            "angle_rank": self.angle_rank,
            "witness": self.witness,
            "lattice": self.lattice.to_dict(),
            "criteria": {k: v.to_dict() for k, v in self.criteria.items()},
            "flags": list(self.flags),
        }


def _profile_or_none(w: WeilPolynomial, profile):
    if profile is not None:
        return profile, None
    try:
        return prime_profile(w), None
    except (PrecisionExhausted, NotApplicable) as exc:
        return None, str(exc)


def _sqf_slopes(w: WeilPolynomial) -> dict:
    return newton_polygon_of(w.sqf, w.p, w.a).multiset()


def criterion_height_one(w: WeilPolynomial, profile: PadicPrimeProfile | None = None) -> Certificate:
    """Without a profile the Newton polygon of the squarefree part decides it exactly:
    a slope of multiplicity one belongs to a single prime of degree one."""
    name = "height_one"
    if w.m <= 0:
        return Certificate(name, "NotApplicable", details={"why": "weight must be positive"})
    m = Fraction(w.m)
    irreducible = len(w.factors) == 1
    if profile is None:
        slopes = _sqf_slopes(w)
        holds = slopes.get(Fraction(0)) == 1 and slopes.get(m) == 1 and all(s in (0, m, m / 2) for s in slopes)
        details = {"slopes": [[str(s), k] for s, k in sorted(slopes.items())], "source": "newton_polygon"}
    else:
        zeros = [v for v in profile.primes if v.slope == 0]
        tops = [v for v in profile.primes if v.slope == m]
        rest = [v for v in profile.primes if v.slope not in (0, m)]
        holds = (
            len(zeros) == 1
            and len(tops) == 1
            and zeros[0].degree == 1
            and tops[0].degree == 1
            and zeros[0].factor_id == tops[0].factor_id
            and all(v.slope == m / 2 for v in rest)
        )
        details = {"slopes": [[str(v.slope), v.degree] for v in profile.primes], "source": "prime_profile"}
    details["irreducible"] = irreducible
    return Certificate(name, "Holds" if holds else "Fails", holds and irreducible, details)


def criterion_half_slope(w: WeilPolynomial, profile: PadicPrimeProfile | None = None) -> Certificate:
    name = "half_slope"
    if w.m <= 0:
        return Certificate(name, "NotApplicable", details={"why": "weight must be positive"})
    if profile is None:
        slopes = _sqf_slopes(w)
        m = Fraction(w.m)
        if slopes.get(m / 2, 0) != 2 or any(s not in (0, m, m / 2) for s in slopes):
            details = {"slopes": [[str(s), k] for s, k in sorted(slopes.items())], "source": "newton_polygon"}
            return Certificate(name, "Fails", False, details)
    profile, err = _profile_or_none(w, profile)
    if profile is None:
        return Certificate(name, "NotApplicable", details={"why": err})
    m = Fraction(w.m)
    half = [v for v in profile.primes if v.slope == m / 2]
    rest = [v for v in profile.primes if v.slope != m / 2]
    holds = (
        len(half) == 1
        and half[0].degree == 2
        and half[0].iota_stable is True
        and all(v.slope in (0, m) for v in rest)
    )
    details = {
        "slopes": [[str(v.slope), v.degree] for v in profile.primes],
        "note": "reported only; the lattice decides",
    }
    return Certificate(name, "Holds" if holds else "Fails", False, details)


def galois_sample_budget(g: int) -> int:
    """Samples after which an unobserved element counts as absent (about exp(-20) miss rate)."""
    return 20 * (2**g) * factorial(g)


def _has_pair_element(phi, tau, idx) -> bool:
    """Is some power of phi equal to tau off one conjugate pair and the identity on it?"""
    n = len(phi)
    sigma = tuple(range(n))
    seen = set()
    while sigma not in seen:
        seen.add(sigma)
        fixed = [i for i in idx if sigma[i] == i]
        if len(fixed) == 2 and tau[fixed[0]] == fixed[1]:
            if all(sigma[i] == tau[i] for i in idx if i not in fixed):
                return True
        sigma = tuple(phi[i] for i in sigma)
    return False


def criterion_ordinary_galois(w: WeilPolynomial, galois_evidence=None, samples: int = DEFAULT_GALOIS_SAMPLES) -> Certificate:
    name = "ordinary_galois"
    try:
        ordn = is_ordinary(w)
    except NotApplicable as exc:
        return Certificate(name, "NotApplicable", details={"why": str(exc)})
    if not ordn.ordinary:
        return Certificate(name, "NotApplicable", details={"why": "not ordinary"})
    if galois_evidence is None and any(f.degree > 2 for f, _ in w.factors):
        from ..primes import frobenius_evidence

        galois_evidence = frobenius_evidence(w, samples)
    galois_evidence = galois_evidence or []
    evidence = [s for s in galois_evidence if not s.skipped]
    nfac = len(w.factors)
    per_factor = []
    for k, (f, _) in enumerate(w.factors):
        g = f.degree // 2
        if g == 1:
            per_factor.append({"factor": k, "g": g, "observed_at": None, "verified": True})
            continue
        hit = None
        for s in evidence:
            idx = [i for i, lab in enumerate(s.root_factor) if lab == k]
            if _has_pair_element(s.frobenius, s.tau, idx):
                hit = s.l
                break
        per_factor.append({"factor": k, "g": g, "observed_at": hit, "verified": hit is not None})
    missing = [e for e in per_factor if not e["verified"]]
    if not missing:
        status = "Verified"
    elif all(len(evidence) >= galois_sample_budget(e["g"]) for e in missing):
        status = "Fails"
    else:
        status = "HeuristicHolds"
    details = {"samples": len(evidence), "factors": per_factor, "irreducible": nfac == 1}
    return Certificate(name, status, status == "Verified" and nfac == 1, details)


def _torsion_obstruction(w: WeilPolynomial, lat: RelationLattice):
    """A nonzero 2-torsion character with value 1, or None."""
    reals = list(lat.real_roots)
    for size in range(1, len(reals) + 1):
        for subset in combinations(reals, size):
            z = ONE
            for _, zi in subset:
                z = z * zi
            if z.is_one():
                v = [0] * lat.ambient_rank
                for i, _ in subset:
                    v[i] = 1
                return {"character": v, "value": "1"}
    return None


def regularity(
    w: WeilPolynomial,
    lattice: RelationLattice | None = None,
    profile: PadicPrimeProfile | None = None,
    galois_evidence=None,
    galois_samples: int = DEFAULT_GALOIS_SAMPLES,
) -> RegularityVerdict:
    """Decide regularity.  Raises Inconclusive when the lattice is incomplete and no criterion applies."""
    lat = lattice if lattice is not None else relation_lattice(w)
    c15 = criterion_height_one(w, profile)
    c16 = criterion_half_slope(w, profile)
    if galois_samples > 0 or galois_evidence is not None:
        c17 = criterion_ordinary_galois(w, galois_evidence, galois_samples)
    else:
        c17 = Certificate("ordinary_galois", "NotApplicable", details={"why": "no Galois evidence requested"})
    criteria = {"height_one": c15, "half_slope": c16, "ordinary_galois": c17}
    g = len(lat.cm_pairs)
    flags = []

    lattice_verdict = None
    if lat.complete:
        if lat.extra:
            z = lat.extra[0][1]
            rel = next(r for r in lat.basis if r.kind == "extra")
            lattice_verdict = (False, "ExtraRelation", {"vector": list(rel.vector), "zeta": z.to_dict(), "order": z.order})
        else:
            obs = _torsion_obstruction(w, lat)
            if obs is not None:
                lattice_verdict = (False, "TorsionObstruction", obs)
            else:
                lattice_verdict = (True, "LatticeTrivial", None)

    if c16.holds and lattice_verdict is not None and not lattice_verdict[0]:
        flags.append("half_slope criterion holds but the lattice finds a relation")

    for cert, reason in ((c15, "Criterion15"), (c17, "Criterion17")):
        if cert.implies_regular:
            if lattice_verdict is not None and not lattice_verdict[0]:
                flags.append(f"{reason} disagrees with the lattice")
            angle = lat.angle_rank if lat.complete else g
            return RegularityVerdict(True, reason, angle, None, lat, criteria, tuple(flags))

    if lattice_verdict is None:
        raise Inconclusive("relation lattice is incomplete and no sufficient criterion applies")
    regular, reason, witness = lattice_verdict
    return RegularityVerdict(regular, reason, lat.angle_rank, witness, lat, criteria, tuple(flags))
