"""Brute-force ground truth.

Enumerates every chain ending at the ambient object and every strictly
increasing integer weight vector with entries bounded by W, applies the
pair constraint when one is given, and maximizes the invariant exactly.
No pruning beyond feasibility: correctness over speed.

Since nu is scale invariant, proportional weight vectors represent the same
candidate; the argmax is always reported in primitive form (weights divided
by their gcd), and ties are broken deterministically by
(shorter chain, lexicographic chain ids, lexicographic primitive weights).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterator

from .invariant import nu_delta
from .lattice import (
    PairObject,
    SubobjectLattice,
    UnweightedFiltration,
    WeightedFiltration,
    make_chain,
    make_filtration,
    pair_pivot_index,
)
from .ratpoly import GREATER, NuValue, RatPoly, nu_compare


@dataclass(frozen=True)
class OracleResult:
    """best is None iff every candidate value is <= 0; value is the maximum
    found either way.  explored counts feasible nondegenerate candidates."""

    best: WeightedFiltration | None
    value: NuValue
    explored: int


def enumerate_chains(lat: SubobjectLattice) -> list[UnweightedFiltration]:
    """All strictly increasing chains of nonzero members ending at top,
    in lexicographic order of their id tuples."""
    chains: list[tuple[str, ...]] = []

    def extend(prefix: tuple[str, ...]) -> None:
        chains.append(prefix)
        for cand in lat.nonzero_ids():
            if lat.lt(cand, prefix[-1]):
                extend(prefix + (cand,))

    extend((lat.top_id,))
    chains.sort()
    return [make_chain(lat, c) for c in chains]


def _primitive_vector(weights: tuple[int, ...]) -> tuple[int, ...]:
    common = gcd(*weights)
    return tuple(w // common for w in weights) if common > 1 else weights


def iter_candidates(
    lat: SubobjectLattice,
    pair: PairObject | None = None,
    delta: RatPoly | None = None,
    bound: int = 4,
) -> Iterator[tuple[tuple[str, ...], tuple[int, ...], NuValue]]:
    """Yield (chain ids, weights, value) over all feasible nondegenerate
    candidates, chains in canonical order, weights lexicographic."""
    if bound < 1:
        raise ValueError(f"weight bound must be >= 1, got {bound}")
    top = lat.top.stats
    beta = pair.beta_image if pair is not None else None
    twist = None
    if delta is not None and not delta.is_zero():
        twist = delta

    for chain in enumerate_chains(lat):
        # per-weight contribution of step m:
        # (reduced(gr) - delta/rank(F) - reduced(F)) * rank(gr)
        contribs: list[RatPoly] = []
        for g in chain.gradeds:
            term = (g.reduced - top.reduced) * g.rank
            if twist is not None:
                term = term - twist * (g.rank / top.rank)
            contribs.append(term)
        ranks = [g.rank for g in chain.gradeds]
        pivot = pair_pivot_index(chain.chain, lat, beta) if beta is not None else None

        for weights in combinations(range(-bound, bound + 1), len(chain.chain)):
            if pivot is not None and weights[pivot] < 0:
                continue
            b = sum((r * w * w for r, w in zip(ranks, weights)), Fraction(0))
            if b == 0:  # the trivial chain with weight 0
                continue
            numerator = RatPoly.zero()
            for w, contrib in zip(weights, contribs):
                if w:
                    numerator = numerator + contrib * w
            yield chain.chain, weights, NuValue(numerator, b)


def brute_force_max(
    lat: SubobjectLattice,
    pair: PairObject | None = None,
    delta: RatPoly | None = None,
    bound: int = 4,
) -> OracleResult:
    """Exact maximum of nu (or nu_delta) over bounded integer weights."""
    best_chain: tuple[str, ...] | None = None
    best_weights: tuple[int, ...] | None = None
    best_value: NuValue | None = None
    explored = 0
    for chain, weights, value in iter_candidates(lat, pair, delta, bound):
        explored += 1
        if best_value is None:
            verdict = GREATER
        else:
            verdict = nu_compare(value, best_value)
        if verdict == GREATER:
            best_chain, best_weights, best_value = chain, _primitive_vector(weights), value
        elif verdict == 0:
            key = (len(chain), chain, _primitive_vector(weights))
            if key < (len(best_chain), best_chain, best_weights):
                best_chain, best_weights, best_value = chain, key[2], value

    zero = NuValue.zero()
    if best_value is None:
        return OracleResult(best=None, value=zero, explored=0)
    if nu_compare(best_value, zero) != GREATER:
        return OracleResult(best=None, value=best_value, explored=explored)
    best = make_filtration(lat, best_chain, best_weights, pair)
    # report the value of the primitive representative (same nu_compare class)
    return OracleResult(best=best, value=nu_delta(best, delta), explored=explored)
