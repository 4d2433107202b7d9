"""The universal commutative ring attached to a finitely presented ring.

For a presentation of R by generators and relations, the matrix-entry
ideal of the relations' generic-matrix images presents the universal ring
over which R maps to n x n matrices; the generator images are the generic
matrices taken modulo that ideal.  The ideal is handled extensionally:
degree-truncated spans give one-sided membership certificates, no normal
forms are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactla import in_span
from .freering import Alphabet, FreePoly, parse_freepoly
from .invariants import _WIDTH, CommPoly, MatrixInvariants, MatrixPoly, PolyRing


@dataclass(frozen=True)
class Presentation:
    """Generators (an ordered alphabet) and relation polynomials."""

    alphabet: Alphabet
    relations: tuple[FreePoly, ...]

    def __post_init__(self):
        k = len(self.alphabet)
        for r in self.relations:
            for w in r.terms:
                if any(a >= k for a in w):
                    raise ValueError("relation mentions an undeclared generator")


def load_presentation(data: dict) -> Presentation:
    """Build a presentation from the JSON shape
    {"generators": ["x", "y"], "relations": ["x*y - y*x - 1"]}."""
    gens = data.get("generators")
    if not gens:
        raise ValueError("presentation needs at least one generator")
    alphabet = Alphabet(gens)
    rels = tuple(parse_freepoly(r, alphabet) for r in data.get("relations", []))
    return Presentation(alphabet, rels)


def build_An(p: Presentation, n: int
             ) -> tuple[list[CommPoly], list[MatrixPoly]]:
    """Ideal generators of the universal ring at order n, plus the images
    of the presentation's generators.

    The entries of each relation's generic-matrix image generate the same
    ideal as the two-sided matrix ideal (elementary matrices extract
    entries), so they are emitted directly.
    """
    inv = MatrixInvariants.get(p.alphabet, n)
    gens: list[CommPoly] = []
    for r in p.relations:
        mat = inv.jn_eval(r)
        for row in mat.entries:
            for entry in row:
                if not entry.is_zero():
                    gens.append(entry)
    images = [inv.generic_matrix(s) for s in range(len(p.alphabet))]
    return gens, images


def jnr_image(p: Presentation, n: int, f: FreePoly) -> MatrixPoly:
    """Image of f in the universal matrix ring, to be read modulo the
    emitted ideal; no reduction is performed."""
    k = len(p.alphabet)
    for w in f.terms:
        if any(a >= k for a in w):
            raise ValueError("element mentions an undeclared generator")
    return MatrixInvariants.get(p.alphabet, n).jn_eval(f)


def _monomials_up_to(ring: PolyRing, max_deg: int) -> list[int]:
    """Packed keys of every monomial of total degree <= max_deg."""
    out: list[int] = []

    def rec(idx: int, rem: int, key: int) -> None:
        if idx == ring.nvars:
            out.append(key)
            return
        for e in range(rem + 1):
            rec(idx + 1, rem - e, key | (e << (_WIDTH * idx)))

    rec(0, max_deg, 0)
    return sorted(out)


def ideal_piece(gens: list[CommPoly], max_deg: int) -> list[CommPoly]:
    """Spanning set of the ideal slice of total degree <= max_deg:
    monomial multiples of the generators that stay within the bound."""
    if not gens:
        return []
    ring = gens[0].ring
    out: list[CommPoly] = []
    for g in gens:
        dg = g.total_degree()
        if dg > max_deg:
            continue
        for key in _monomials_up_to(ring, max_deg - dg):
            out.append(g * CommPoly(ring, {key: 1}))
    return out


def ideal_membership(gens: list[CommPoly], target: CommPoly, max_deg: int
                     ) -> tuple[bool, list[Fraction] | None]:
    """One-sided certificate that target lies in the ideal, looking only at
    multiplier monomials within the degree bound."""
    span = ideal_piece(gens, max_deg)
    keys = sorted({k for p in span for k in p.terms} | set(target.terms))
    cols = {k: i for i, k in enumerate(keys)}
    vecs = [p.coeff_vector(cols) for p in span]
    return in_span(vecs, target.coeff_vector(cols))
