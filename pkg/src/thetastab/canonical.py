"""Semistability, Harder-Narasimhan data, and canonical destabilizations.

The greedy HN construction repeatedly picks, above the current member, the
member whose quotient maximizes (reduced polynomial, rank) lexicographically.
A tie between incomparable members is reported as AmbiguousHN rather than
resolved silently: uniqueness of the HN filtration presumes closure under
sums, which a user lattice may lack.

The leading term filtration keeps only the HN steps where the leading slope
jumps, and carries the canonical primitive integer weights proportional to
slope(graded) - slope(ambient).

delete_step and convexify implement the weight-merging deletion lemma; both
live in the no-pair theory (a deletion can drive the marked image's weight
negative, which is exactly why canonical pair filtrations may be nonconvex).
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass

from .errors import (
    AmbiguousHN,
    InvalidHN,
    NegativeNu,
    ObjectSemistable,
    PreconditionFailed,
)
from .invariant import nu
from .lattice import (
    ObjectClass,
    SubobjectLattice,
    UnweightedFiltration,
    WeightedFiltration,
    make_chain,
    make_filtration,
)
from .ratpoly import (
    GREATER,
    LESS,
    NuValue,
    RatPoly,
    eventual_compare,
    hilbert_stats,
    nu_compare,
)


def is_semistable(lat: SubobjectLattice) -> tuple[bool, ObjectClass | None]:
    """Gieseker test: no nonzero proper member may beat the ambient object.

    On failure returns a witness of maximal reduced polynomial (ties broken
    by rank, then id, for determinism).
    """
    top_reduced = lat.top.stats.reduced
    witness: ObjectClass | None = None
    for member_id in lat.proper_nonzero_ids():
        member = lat.member(member_id)
        if eventual_compare(member.stats.reduced, top_reduced) != GREATER:
            continue
        if witness is None:
            witness = member
            continue
        cmp = eventual_compare(member.stats.reduced, witness.stats.reduced)
        if cmp == GREATER or (
            cmp == 0
            and (member.stats.rank, member.id) > (witness.stats.rank, witness.id)
        ):
            witness = member
    return witness is None, witness


@dataclass(frozen=True)
class HNData:
    """HN chain: graded reduced polynomials strictly decrease outward."""

    chain: UnweightedFiltration

    def is_trivial(self) -> bool:
        return self.chain.is_trivial()


def hn_filtration(lat: SubobjectLattice) -> HNData:
    """Greedy HN construction with lexicographic (reduced, rank) selection."""
    picks: list[str] = []  # deepest first
    current = lat.zero_id
    current_poly = RatPoly.zero()
    while current != lat.top_id:
        best_id: str | None = None
        best_reduced: RatPoly | None = None
        best_rank: Fraction | None = None
        tied_incomparable: str | None = None
        for cand in lat.nonzero_ids():
            if not lat.lt(current, cand):
                continue
            stats = hilbert_stats(lat.member(cand).poly - current_poly, lat.dim)
            if best_id is None:
                best_id, best_reduced, best_rank = cand, stats.reduced, stats.rank
                tied_incomparable = None
                continue
            cmp = eventual_compare(stats.reduced, best_reduced)
            if cmp == GREATER or (cmp == 0 and stats.rank > best_rank):
                best_id, best_reduced, best_rank = cand, stats.reduced, stats.rank
                tied_incomparable = None
            elif cmp == 0 and stats.rank == best_rank:
                # comparable members cannot tie (ranks would differ)
                tied_incomparable = cand
        if tied_incomparable is not None:
            raise AmbiguousHN(
                f"incomparable members {best_id!r} and {tied_incomparable!r} tie "
                f"above {current!r}; lattice is not closed under sums"
            )
        picks.append(best_id)
        current = best_id
        current_poly = lat.member(best_id).poly
    chain = make_chain(lat, tuple(reversed(picks)))
    for outer, deeper in zip(chain.gradeds, chain.gradeds[1:]):
        if eventual_compare(deeper.reduced, outer.reduced) != GREATER:
            raise InvalidHN(
                "greedy chain violates strict decrease of graded reduced polynomials"
            )
    return HNData(chain=chain)


@dataclass(frozen=True)
class LeadingTermData:
    """Merged HN chain, leading slope index, canonical primitive weights."""

    chain: UnweightedFiltration
    index: int
    weights: tuple[int, ...]


def _primitive(fracs: list[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers (positive scale)."""
    from math import gcd, lcm

    denoms = lcm(*(f.denominator for f in fracs))
    ints = [int(f * denoms) for f in fracs]
    common = gcd(*ints)
    if common:
        ints = [v // common for v in ints]
    return tuple(ints)


def leading_term(hn: HNData) -> LeadingTermData:
    """Merge HN steps with equal leading slope, attach canonical weights."""
    if hn.is_trivial():
        raise ObjectSemistable("trivial HN chain has no leading term filtration")
    lat = hn.chain.lattice
    gradeds = hn.chain.gradeds
    d = lat.dim
    index = None
    for i in reversed(range(d)):
        if len({g.slopes[i] for g in gradeds}) > 1:
            index = i
            break
    if index is None:
        # equal slope vectors mean equal reduced polynomials, which the
        # HNData invariant already excludes
        raise InvalidHN("HN graded pieces have identical slope vectors")

    # keep chain[m] iff the leading slope jumps across step m
    kept = [0]
    for m in range(1, len(hn.chain.chain)):
        if gradeds[m - 1].slopes[index] < gradeds[m].slopes[index]:
            kept.append(m)
    merged = make_chain(lat, tuple(hn.chain.chain[m] for m in kept))

    top_slope = lat.top.stats.slopes[index]
    raw = [g.slopes[index] - top_slope for g in merged.gradeds]
    weights = _primitive(raw)
    return LeadingTermData(chain=merged, index=index, weights=weights)


def canonical_filtration(lat: SubobjectLattice) -> WeightedFiltration:
    """Weighted leading-term filtration of an unstable object."""
    lterm = leading_term(hn_filtration(lat))
    return make_filtration(lat, lterm.chain.chain, lterm.weights)


def _deletion_condition(f: WeightedFiltration, i: int) -> bool:
    """Lemma hypothesis at step i: deeper graded piece does not dominate."""
    return (
        eventual_compare(f.gradeds[i + 1].reduced, f.gradeds[i].reduced) != GREATER
    )


def delete_step(f: WeightedFiltration, i: int) -> WeightedFiltration:
    """Remove G_(i+1) and reweight per the deletion lemma; nu never drops.

    New weights: R*w_l away from the merge, R_i*w_i + R_{i+1}*w_{i+1} at it,
    with R_i, R_{i+1} the merged graded ranks and R their sum.
    """
    if not 0 <= i < len(f.weights) - 1:
        raise PreconditionFailed(f"no step pair at index {i}")
    if nu_compare(nu(f), NuValue.zero()) == LESS:
        raise PreconditionFailed("deletion lemma requires nu(f) >= 0")
    if not _deletion_condition(f, i):
        raise PreconditionFailed(
            f"graded piece {i + 1} strictly dominates piece {i}; lemma does not apply"
        )
    from math import lcm

    r_i = f.gradeds[i].rank
    r_next = f.gradeds[i + 1].rank
    total = r_i + r_next
    chain = f.chain[: i + 1] + f.chain[i + 2:]
    merged_weight = r_i * f.weights[i] + r_next * f.weights[i + 1]
    raw: list[Fraction] = []
    for pos in range(len(chain)):
        original = pos if pos <= i else pos + 1
        raw.append(merged_weight if pos == i else total * f.weights[original])
    # formal ranks may be non-integer rationals; a uniform positive scaling
    # restores integrality without changing nu
    scale = lcm(*(Fraction(w).denominator for w in raw))
    return make_filtration(f.lattice, chain, [int(w * scale) for w in raw])


def violating_indices(f: WeightedFiltration) -> list[int]:
    """Steps where convexity fails strictly: deeper reduced poly is smaller."""
    return [
        i
        for i in range(len(f.weights) - 1)
        if eventual_compare(f.gradeds[i + 1].reduced, f.gradeds[i].reduced) == LESS
    ]


def is_convex(f: WeightedFiltration) -> bool:
    return not violating_indices(f)


def convexify(f: WeightedFiltration) -> WeightedFiltration:
    """Delete at the deepest violating step until convex; nu non-decreasing."""
    if nu_compare(nu(f), NuValue.zero()) == LESS:
        raise NegativeNu("convexification requires nu(f) >= 0")
    current = f
    for _ in range(len(f.weights)):
        bad = violating_indices(current)
        if not bad:
            return current
        current = delete_step(current, bad[-1])
    return current
