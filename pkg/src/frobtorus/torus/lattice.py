"""Character lattice X*(S) = Z^d / <pairing relations> of the torus attached to a Weil polynomial."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.linalg import snf, vec_mat
from ..weil.weilpoly import WeilPolynomial


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group given by moduli; modulus 0 means a copy of Z."""

    moduli: tuple

    def normalize(self, v) -> tuple:
        return tuple(x % n if n else x for x, n in zip(v, self.moduli))

    def add(self, u, v) -> tuple:
        return self.normalize(a + b for a, b in zip(u, v))

    def neg(self, u) -> tuple:
        return self.normalize(-a for a in u)

    def scale(self, k: int, u) -> tuple:
        return self.normalize(k * a for a in u)

    def zero(self) -> tuple:
        return tuple(0 for _ in self.moduli)

    def is_zero(self, u) -> bool:
        return all(x == 0 for x in self.normalize(u))

    @property
    def free_rank(self) -> int:
        return sum(1 for n in self.moduli if n == 0)

    @property
    def torsion(self) -> list[int]:
        return [n for n in self.moduli if n]


@dataclass(frozen=True)
class CharacterLattice:
    ambient_rank: int
    pairing: tuple  # pairing[i] = index of the conjugate root
    pairing_relations: tuple  # rows e_i + e_pairing[i], one per orbit
    V: tuple  # column transform of the Smith form: relations * V = U^-1 * D
    diagonal: tuple  # Smith invariants of the relation matrix, zero-padded to ambient_rank
    group: AbelianGroup

    def key(self, v) -> tuple:
        """Canonical coordinates of the class of v in X*(S)."""
        return quotient_key(self.V, self.diagonal, v)

    def xi(self, i: int) -> tuple:
        """The weight attached to root i."""
        e = [0] * self.ambient_rank
        e[i] = 1
        return self.key(e)

    def weights(self) -> list[tuple]:
        return [self.xi(i) for i in range(self.ambient_rank)]

    def is_trivial(self, v) -> bool:
        return self.group.is_zero(self.key(v))

    def iota(self, v) -> list[int]:
        """Action of the pairing involution on coordinate vectors."""
        out = [0] * self.ambient_rank
        for i, x in enumerate(v):
            out[self.pairing[i]] += x
        return out

    def iota_is_minus_one(self) -> bool:
        for i in range(self.ambient_rank):
            e = [0] * self.ambient_rank
            e[i] = 1
            if self.key(self.iota(e)) != self.group.neg(self.key(e)):
                return False
        return True

    @property
    def free_rank(self) -> int:
        return self.group.free_rank

    @property
    def torsion(self) -> list[int]:
        return self.group.torsion

    def to_dict(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "free_rank": self.free_rank,
            "torsion": self.torsion,
            "pairing_relations": [list(r) for r in self.pairing_relations],
        }


def quotient_key(V, diagonal, v) -> tuple:
    """Coordinates of v modulo the row lattice whose Smith data is (V, diagonal)."""
    y = vec_mat(list(v), [list(r) for r in V])
    parts = []
    for yi, di in zip(y, diagonal):
        if di == 1:
            continue
        parts.append(yi % di if di else yi)
    return tuple(parts)


def smith_quotient(rows, d: int):
    """(V, diagonal, group) presenting Z^d / <rows>; see CharacterLattice.key."""
    rows = [list(r) for r in rows if any(r)]
    if rows:
        _, D, V = snf(rows)
        diag = [abs(D[i][i]) if i < len(D) else 0 for i in range(d)]
    else:
        V = [[int(i == j) for j in range(d)] for i in range(d)]
        diag = [0] * d
    moduli = tuple(x for x in diag if x != 1)
    return tuple(tuple(r) for r in V), tuple(diag), AbelianGroup(moduli)


def lattice_from_pairing(pairing) -> CharacterLattice:
    d = len(pairing)
    rows = []
    for i, j in enumerate(pairing):
        if i <= j:
            r = [0] * d
            r[i] += 1
            r[j] += 1
            rows.append(r)
    V, diag, group = smith_quotient(rows, d)
    return CharacterLattice(
        ambient_rank=d,
        pairing=tuple(pairing),
        pairing_relations=tuple(tuple(r) for r in rows),
        V=V,
        diagonal=diag,
        group=group,
    )


def character_lattice(w: WeilPolynomial) -> CharacterLattice:
    return lattice_from_pairing(w.conj_pairing)
