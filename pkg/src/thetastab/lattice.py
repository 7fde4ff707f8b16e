"""Finite subobject-lattice model.

All stability computations run inside a user-declared finite poset of
object classes.  Each member is identified with its Hilbert polynomial;
declared inclusions stand for saturated subobjects (or sub-Lambda-modules),
so along every strict inclusion the quotient polynomial must again look
pure: degree exactly d with positive leading coefficient.

Structural conventions:

* the zero object is the unique member with the zero polynomial, and the
  ambient object (top) is the unique member of maximal rank; zero sits
  below everything and every member sits below top without needing to be
  declared,
* a chain is written top-first: G_(0) = top, deeper members later, with
  strictly increasing integer weights w_0 < w_1 < ... < w_q, matching the
  Rees picture where the weights are the jump set of a Z-indexed family,
* a pair marks the saturated image of the framing map; any filtration of
  the pair must give that member a nonnegative weight (the framing factors
  through the weight-zero subobject).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import (
    ChainNotIncreasing,
    CycleInRelation,
    MissingTopOrZero,
    NotComparable,
    PairConstraintViolated,
    ParseError,
    QuotientNotPure,
    RankNotIncreasing,
    WeightsNotIncreasing,
)
from .ratpoly import HilbertStats, RatPoly, hilbert_stats


@dataclass(frozen=True)
class ObjectClass:
    """A formal pure object of dimension d, identified by its polynomial.

    stats is None exactly for the zero object.
    """

    id: str
    poly: RatPoly
    stats: HilbertStats | None

    @property
    def rank(self) -> Fraction:
        return self.stats.rank if self.stats is not None else Fraction(0)

    @property
    def is_zero(self) -> bool:
        return self.stats is None


def _coerce_poly(value: RatPoly | Mapping) -> RatPoly:
    if isinstance(value, RatPoly):
        return value
    if isinstance(value, Mapping):
        return RatPoly({int(k): v for k, v in value.items()})
    raise ParseError(f"cannot interpret {value!r} as a polynomial")


class SubobjectLattice:
    """Validated finite poset of object classes; immutable after build."""

    def __init__(self, dim, members, zero_id, top_id, closure):
        self.dim: int = dim
        self._members: dict[str, ObjectClass] = members
        self.zero_id: str = zero_id
        self.top_id: str = top_id
        self._closure: frozenset[tuple[str, str]] = closure

    # -- access -----------------------------------------------------------

    def member(self, member_id: str) -> ObjectClass:
        try:
            return self._members[member_id]
        except KeyError:
            raise NotComparable(f"unknown lattice member {member_id!r}") from None

    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._members))

    def nonzero_ids(self) -> tuple[str, ...]:
        return tuple(i for i in self.ids() if i != self.zero_id)

    def proper_nonzero_ids(self) -> tuple[str, ...]:
        return tuple(i for i in self.nonzero_ids() if i != self.top_id)

    @property
    def top(self) -> ObjectClass:
        return self._members[self.top_id]

    @property
    def zero(self) -> ObjectClass:
        return self._members[self.zero_id]

    def lt(self, sub: str, sup: str) -> bool:
        """Strict inclusion in the transitive closure."""
        return (sub, sup) in self._closure

    def leq(self, sub: str, sup: str) -> bool:
        return sub == sup or self.lt(sub, sup)

    def strict_pairs(self) -> frozenset[tuple[str, str]]:
        return self._closure

    def structurally_equal(self, other: SubobjectLattice) -> bool:
        return (
            self.dim == other.dim
            and self.zero_id == other.zero_id
            and self.top_id == other.top_id
            and self._closure == other._closure
            and {i: m.poly for i, m in self._members.items()}
            == {i: m.poly for i, m in other._members.items()}
        )

    def as_dict(self) -> dict:
        """Raw description with the same semantics, for round-tripping."""
        return {
            "dimension": self.dim,
            "objects": [
                {"id": i, "hilbert": dict(self._members[i].poly.items())}
                for i in self.ids()
            ],
            "relations": sorted(self._closure),
        }

    def __repr__(self) -> str:
        return f"SubobjectLattice(d={self.dim}, top={self.top_id!r}, members={len(self._members)})"


def _find_cycle(nodes: Iterable[str], edges: set[tuple[str, str]]) -> bool:
    succ: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in edges:
        succ[a].append(b)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in succ}
    for root in succ:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    return True
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return False


def build_lattice(
    dim: int,
    polys: Mapping[str, RatPoly | Mapping],
    relations: Iterable[Sequence[str]] = (),
) -> SubobjectLattice:
    """Validate a lattice description and return the closed lattice.

    relations lists declared strict inclusions (sub, super); inclusions of
    the zero object and into the ambient object are implicit.
    """
    if dim < 0:
        raise ParseError(f"dimension must be nonnegative, got {dim}")
    coerced = {str(i): _coerce_poly(p) for i, p in polys.items()}
    if not coerced:
        raise MissingTopOrZero("lattice has no members")

    zero_ids = [i for i, p in coerced.items() if p.is_zero()]
    if len(zero_ids) != 1:
        raise MissingTopOrZero(
            f"expected exactly one zero member, found {len(zero_ids)}"
        )
    zero_id = zero_ids[0]

    declared: set[tuple[str, str]] = set()
    for pair in relations:
        if len(pair) != 2:
            raise ParseError(f"relation {pair!r} is not a pair")
        sub, sup = str(pair[0]), str(pair[1])
        if sub not in coerced or sup not in coerced:
            raise ParseError(f"relation {pair!r} references an unknown member")
        if sub == sup:
            raise CycleInRelation(f"member {sub!r} declared strictly inside itself")
        declared.add((sub, sup))

    # The ambient object is the member of maximal rank (every proper
    # saturated subobject has strictly smaller rank); a rank tie is broken
    # against members declared inside something else.
    ranks = {i: p.coeff(dim) * factorial(dim) for i, p in coerced.items()}
    top_rank = max(r for i, r in ranks.items() if i != zero_id)
    top_ids = [i for i, r in ranks.items() if r == top_rank and i != zero_id]
    if len(top_ids) > 1:
        declared_subs = {sub for sub, _ in declared}
        top_ids = [i for i in top_ids if i not in declared_subs]
    if len(top_ids) != 1:
        raise MissingTopOrZero(
            "ambient object not identifiable: maximal rank is not unique"
        )
    top_id = top_ids[0]

    edges = set(declared)
    for i in coerced:
        if i != zero_id:
            edges.add((zero_id, i))
        if i not in (top_id, zero_id):
            edges.add((i, top_id))

    if _find_cycle(coerced, edges):
        raise CycleInRelation("declared inclusions contain a cycle")

    # Transitive closure by DFS from each node; member counts are small.
    succ: dict[str, set[str]] = {n: set() for n in coerced}
    for a, b in edges:
        succ[a].add(b)
    closure: set[tuple[str, str]] = set()
    for start in coerced:
        seen: set[str] = set()
        stack = list(succ[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(succ[node])
        closure.update((start, t) for t in seen)

    for sub, sup in sorted(closure):
        if ranks[sub] >= ranks[sup]:
            raise RankNotIncreasing(
                f"rank must grow strictly along {sub!r} < {sup!r}: "
                f"{ranks[sub]} >= {ranks[sup]}"
            )
        quotient = coerced[sup] - coerced[sub]
        if quotient.has_negative_exponents() or quotient.degree() != dim:
            raise QuotientNotPure(
                f"quotient {sup!r}/{sub!r} must have degree exactly {dim}"
            )
        if quotient.leading_coeff() <= 0:
            raise QuotientNotPure(
                f"quotient {sup!r}/{sub!r} has nonpositive leading coefficient"
            )

    members = {}
    for i, p in coerced.items():
        stats = None if i == zero_id else hilbert_stats(p, dim)
        members[i] = ObjectClass(id=i, poly=p, stats=stats)
    return SubobjectLattice(dim, members, zero_id, top_id, frozenset(closure))


def validate_lattice(raw: Mapping) -> SubobjectLattice:
    """Validate a raw description {dimension, objects, relations}."""
    try:
        dim = int(raw["dimension"])
        objects = raw["objects"]
        relations = raw.get("relations", ())
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed lattice description: {exc}") from exc
    polys: dict[str, RatPoly | Mapping] = {}
    for entry in objects:
        try:
            obj_id, hilbert = str(entry["id"]), entry["hilbert"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed object entry {entry!r}") from exc
        if obj_id in polys:
            raise ParseError(f"duplicate member id {obj_id!r}")
        polys[obj_id] = hilbert
    return build_lattice(dim, polys, relations)


@dataclass(frozen=True)
class PairObject:
    """A lattice together with the saturated image of the framing map.

    beta_image None encodes a zero framing map.
    """

    lattice: SubobjectLattice
    beta_image: str | None

    def __post_init__(self):
        if self.beta_image is not None:
            member = self.lattice.member(self.beta_image)
            if member.is_zero:
                raise ParseError("beta_image must be a nonzero member (use null for beta = 0)")


@dataclass(frozen=True)
class UnweightedFiltration:
    """Strictly increasing chain G_(q) < ... < G_(0) = top, stored top-first.

    gradeds[m] holds the statistics of G_(m)/G_(m+1), with the implicit
    G_(q+1) = 0.
    """

    lattice: SubobjectLattice = field(compare=False)
    chain: tuple[str, ...]
    gradeds: tuple[HilbertStats, ...] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.chain)

    @property
    def steps(self) -> int:
        return len(self.chain)

    def member(self, m: int) -> ObjectClass:
        return self.lattice.member(self.chain[m])

    def is_trivial(self) -> bool:
        return len(self.chain) == 1


def make_chain(lat: SubobjectLattice, ids: Sequence[str]) -> UnweightedFiltration:
    """Validate a top-first chain of nonzero members."""
    chain = tuple(str(i) for i in ids)
    if not chain:
        raise ChainNotIncreasing("chain must contain at least the ambient object")
    if chain[0] != lat.top_id:
        raise ChainNotIncreasing(
            f"chain must start at the ambient object {lat.top_id!r}, got {chain[0]!r}"
        )
    for member_id in chain:
        if lat.member(member_id).is_zero:
            raise ChainNotIncreasing("the zero object is implicit and may not appear")
    for deeper, shallower in zip(chain[1:], chain):
        if not lat.lt(deeper, shallower):
            raise ChainNotIncreasing(
                f"{deeper!r} is not strictly contained in {shallower!r}"
            )
    gradeds = []
    for m, member_id in enumerate(chain):
        below = lat.member(chain[m + 1]).poly if m + 1 < len(chain) else RatPoly.zero()
        gradeds.append(hilbert_stats(lat.member(member_id).poly - below, lat.dim))
    return UnweightedFiltration(lattice=lat, chain=chain, gradeds=tuple(gradeds))


@dataclass(frozen=True)
class WeightedFiltration:
    """Chain plus strictly increasing integer weights (Rees jump set)."""

    base: UnweightedFiltration
    weights: tuple[int, ...]

    @property
    def lattice(self) -> SubobjectLattice:
        return self.base.lattice

    @property
    def chain(self) -> tuple[str, ...]:
        return self.base.chain

    @property
    def gradeds(self) -> tuple[HilbertStats, ...]:
        return self.base.gradeds

    def __len__(self) -> int:
        return len(self.weights)


def pair_pivot_index(chain: Sequence[str], lat: SubobjectLattice, beta_image: str) -> int:
    """Largest chain index j with beta_image contained in G_(j)."""
    pivot = 0
    for j, member_id in enumerate(chain):
        if lat.leq(beta_image, member_id):
            pivot = j
    return pivot


def make_filtration(
    lat: SubobjectLattice,
    chain: Sequence[str],
    weights: Sequence[int],
    pair: PairObject | None = None,
) -> WeightedFiltration:
    """Validate chain, weights, and (for pairs) the image-weight constraint."""
    base = make_chain(lat, chain)
    ws = tuple(int(w) for w in weights)
    if len(ws) != len(base.chain):
        raise WeightsNotIncreasing(
            f"{len(base.chain)} chain members need {len(base.chain)} weights, got {len(ws)}"
        )
    if any(b <= a for a, b in zip(ws, ws[1:])):
        raise WeightsNotIncreasing(f"weights must be strictly increasing, got {ws}")
    if pair is not None and pair.beta_image is not None:
        if pair.lattice is not lat:
            raise ParseError("pair belongs to a different lattice")
        j = pair_pivot_index(base.chain, lat, pair.beta_image)
        if ws[j] < 0:
            raise PairConstraintViolated(
                f"image subobject sits at index {j} with weight {ws[j]} < 0"
            )
    return WeightedFiltration(base=base, weights=ws)


def quotient_poly(lat: SubobjectLattice, sub: str, sup: str) -> HilbertStats:
    """Statistics of sup/sub; requires sub strictly inside sup."""
    if not lat.lt(sub, sup):
        raise NotComparable(f"{sub!r} is not strictly contained in {sup!r}")
    return hilbert_stats(lat.member(sup).poly - lat.member(sub).poly, lat.dim)


def graded_pieces(f: WeightedFiltration) -> list[tuple[int, HilbertStats]]:
    """(weight, graded statistics) per step, deepest step first."""
    pieces = [(w, g) for w, g in zip(f.weights, f.gradeds)]
    return pieces[::-1]
