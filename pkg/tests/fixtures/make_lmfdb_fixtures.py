"""Regenerate the LMFDB-style cache fixtures used by the ingest tests.

Rows mimic the av_fq_isog API: ``poly`` lists the L-polynomial from the
constant term up, i.e. the Weil polynomial from the leading term down.
g=1 lists every trace allowed by the Hasse bound, which is the full list of
isogeny classes for q in {2, 3, 4, 5}.  g=2 holds the products of those classes
plus the irreducible ordinary quartics, a subset of the real listing.

Run from the repository root: python tests/fixtures/make_lmfdb_fixtures.py
"""

import json
from pathlib import Path

from frobtorus.core.factor import factor_rational
from frobtorus.core.poly import IntPoly
from frobtorus.errors import ValidationError
from frobtorus.lmfdb import query_key
from frobtorus.weil.weilpoly import validate

OUT = Path(__file__).parent / "lmfdb"


def letters(n: int) -> str:
    if n < 0:
        return "a" + letters(-n)
    s = ""
    while True:
        s = chr(ord("a") + n % 26) + s
        n //= 26
        if n == 0:
            return s


def label(g, q, lpoly):
    return f"{g}.{q}." + "_".join(letters(c) for c in lpoly[1 : g + 1])


def elliptic(q):
    out = []
    for a in range(-2 * int(q**0.5) - 1, 2 * int(q**0.5) + 2):
        if a * a <= 4 * q:
            out.append([1, a, q])  # L-polynomial 1 + a T + q T^2
    return out


def surfaces(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    rows = set()
    ell = elliptic(q)
    for i, e in enumerate(ell):
        for f in ell[i:]:
            w = IntPoly(list(reversed(e))) * IntPoly(list(reversed(f)))
            rows.add(tuple(reversed(w.coeffs)))
    for a in range(-6, 7):
        for b in range(-3 * q, 3 * q + 1):
            if b % p == 0:
                continue
            w = IntPoly([q * q, q * a, b, a, 1])
            if len(factor_rational(w)) != 1:
                continue
            try:
                validate(w, q, 1)
            except ValidationError:
                continue
            rows.add(tuple(reversed(w.coeffs)))
    return sorted(list(r) for r in rows)


def write(g, q, polys):
    data = [{"label": label(g, q, p), "g": g, "q": q, "poly": p} for p in polys]
    data.sort(key=lambda r: r["label"])
    path = OUT / f"{query_key(g, q)}.json"
    path.write_text(json.dumps({"query": {"g": g, "q": q}, "data": data}, sort_keys=True, indent=1) + "\n")
    print(path.name, len(data))


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for q in (2, 3, 4, 5):
        write(1, q, elliptic(q))
        write(2, q, surfaces(q))
