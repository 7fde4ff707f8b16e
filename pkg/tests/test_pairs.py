from fractions import Fraction

import pytest

from thetastab import (
    EQUAL,
    GREATER,
    NuValue,
    PairObject,
    RatPoly,
    make_chain,
    make_filtration,
    maximize_weights,
    nu_compare,
    nu_delta,
    nu_slope_coeff,
    pair_canonical,
    pair_canonical_high_degree,
    pair_semistable,
    primitive_weights,
)
from thetastab.errors import DegreeTooLow, FlatObjective, Semistable

from conftest import coordinate_lattice


def P(mapping):
    return RatPoly(mapping)


def const(x):
    return RatPoly.const(Fraction(x))


class TestPairSemistable:
    def test_wall_at_one(self, pair_o_o1):
        verdict, witness = pair_semistable(pair_o_o1, const(1))
        assert verdict and witness is None

    def test_below_wall(self, pair_o_o1):
        verdict, witness = pair_semistable(pair_o_o1, const(Fraction(1, 2)))
        assert not verdict and witness.id == "O1"

    def test_above_wall(self, pair_o_o1):
        verdict, witness = pair_semistable(pair_o_o1, const(2))
        assert not verdict and witness.id == "O"

    def test_delta_zero_routes_to_gieseker(self, lat_b3, pair_b3):
        verdict, witness = pair_semistable(pair_b3, RatPoly.zero())
        assert not verdict and witness.id == "O5"

    def test_delta_zero_semistable_pair(self):
        lat = coordinate_lattice({"A": 0, "B": 0})
        pair = PairObject(lattice=lat, beta_image="A")
        assert pair_semistable(pair, RatPoly.zero()) == (True, None)

    def test_negative_delta_always_unstable(self, pair_o_o1):
        assert pair_semistable(pair_o_o1, const(-1))[0] is False
        assert pair_semistable(pair_o_o1, P({1: -1}))[0] is False

    def test_zero_framing_map_unstable_for_positive_delta(self, lat_o_o1):
        pair = PairObject(lattice=lat_o_o1, beta_image=None)
        assert pair_semistable(pair, const(1))[0] is False

    def test_big_degree_depends_only_on_image(self, lat_o_o1, pair_o_o1):
        assert pair_semistable(pair_o_o1, P({1: 1}))[0] is False
        full = PairObject(lattice=lat_o_o1, beta_image="F")
        assert pair_semistable(full, P({1: 1})) == (True, None)

    def test_tiny_laurent_delta(self):
        # deg(delta) <= -1 and delta > 0: semistability needs a nonzero
        # framing, a semistable underlying object, and no proper subobject
        # of equal reduced polynomial containing the image
        lat = coordinate_lattice({"A": 0, "B": 0})
        tiny = P({-1: 1})
        full = PairObject(lattice=lat, beta_image="F")
        assert pair_semistable(full, tiny) == (True, None)
        nopair = PairObject(lattice=lat, beta_image=None)
        assert pair_semistable(nopair, tiny)[0] is False
        into_summand = PairObject(lattice=lat, beta_image="A")
        verdict, witness = pair_semistable(into_summand, tiny)
        assert not verdict and witness.id == "A"


class TestHighDegreeCanonical:
    def test_negative_delta_one_step(self, pair_o_o1):
        filt = pair_canonical_high_degree(pair_o_o1, P({2: -1}))
        assert (filt.chain, filt.weights) == (("F",), (1,))
        value = nu_delta(filt, P({2: -1}))
        # leading coefficient is -delta_D / sqrt(rank F): here 1/sqrt(2)
        assert value.L == P({2: 1}) and value.b == 2
        assert nu_compare(value, NuValue.zero()) == GREATER

    def test_positive_delta_two_step(self, lat_b3, pair_b3):
        filt = pair_canonical_high_degree(pair_b3, P({1: 1}))
        assert (filt.chain, filt.weights) == (("F", "O"), (-1, 0))
        value = nu_delta(filt, P({1: 1}))
        # (n/3 - 1) * sqrt(2), kept exact as L = (2/3)n - 2 over sqrt(2)
        assert value == NuValue(P({1: Fraction(2, 3), 0: -2}), Fraction(2))

    def test_full_image_semistable(self, lat_o_o1):
        pair = PairObject(lattice=lat_o_o1, beta_image="F")
        with pytest.raises(Semistable):
            pair_canonical_high_degree(pair, P({1: 1}))

    def test_degree_too_low(self, pair_o_o1):
        with pytest.raises(DegreeTooLow):
            pair_canonical_high_degree(pair_o_o1, const(1))

    def test_zero_framing_map(self, lat_o_o1):
        pair = PairObject(lattice=lat_o_o1, beta_image=None)
        filt = pair_canonical_high_degree(pair, P({1: 1}))
        assert (filt.chain, filt.weights) == (("F",), (-1,))
        assert nu_compare(nu_delta(filt, P({1: 1})), NuValue.zero()) == GREATER


class TestNuSlopeCoeff:
    def test_matches_nu_in_degree_zero(self, lat_o2_o):
        filt = make_filtration(lat_o2_o, ("F", "O2"), (-1, 1))
        assert nu_slope_coeff(filt, RatPoly.zero()) == NuValue(P({0: 2}), Fraction(2))

    def test_flat_when_slopes_sit_at_twisted_ambient(self):
        # slopes 2 and 1 around ambient slope 3/2: delta with
        # delta_0/rank = +-1/2 flattens one graded each; equal twists
        # flatten everything
        lat = coordinate_lattice({"A": 0, "B": 0})
        pair = PairObject(lattice=lat, beta_image="A")
        filt = make_filtration(lat, ("F", "A"), (0, 1), pair)
        for weights in ((0, 1), (-3, 5)):
            f = make_filtration(lat, ("F", "A"), weights, pair)
            assert nu_slope_coeff(f, RatPoly.zero()) == NuValue(P({}), Fraction(1)) or \
                nu_slope_coeff(f, RatPoly.zero()).L.is_zero()

    def test_fixture_top_coefficient(self, lat_b3, pair_b3):
        filt = make_filtration(lat_b3, ("F", "O5+O", "O5"), (-1, 0, 3), pair_b3)
        assert nu_slope_coeff(filt, RatPoly.zero()) == NuValue(P({0: 10}), Fraction(10))


class TestMaximizeWeights:
    def test_pair_example_pins_image_weight(self, lat_b3, pair_b3):
        chain = make_chain(lat_b3, ("F", "O5+O", "O5"))
        result = maximize_weights(chain, pair_b3, RatPoly.zero())
        assert result.chain.chain == ("F", "O5+O", "O5")
        assert primitive_weights(result.weights) == (-1, 0, 3)
        assert result.pinned == 1
        assert result.value == NuValue(P({0: 10}), Fraction(10))

    def test_unconstrained_beats_pair(self, lat_b3):
        chain = make_chain(lat_b3, ("F", "O5+O1", "O5"))
        result = maximize_weights(chain, None, RatPoly.zero())
        assert primitive_weights(result.weights) == (-2, -1, 3)
        # squared value 14 > squared value 10
        assert result.value == NuValue(P({0: 14}), Fraction(14))

    def test_order_violation_merges_once(self, lat_b3):
        chain = make_chain(lat_b3, ("F", "O5+O", "O5"))
        result = maximize_weights(chain, None, RatPoly.zero())
        assert result.chain.chain == ("F", "O5")
        assert primitive_weights(result.weights) == (-1, 2)
        # value sqrt(27/2)
        assert nu_compare(result.value, NuValue(P({0: 27}), Fraction(54))) == EQUAL

    def test_flat_objective(self):
        lat = coordinate_lattice({"A": 0, "B": 0})
        chain = make_chain(lat, ("F", "A"))
        with pytest.raises(FlatObjective):
            maximize_weights(chain, None, RatPoly.zero())

    def test_trivial_chain_with_pair_negative_max(self, lat_o_o1, pair_o_o1):
        # only direction is w > 0; objective coefficient is -delta_0 < 0
        chain = make_chain(lat_o_o1, ("F",))
        result = maximize_weights(chain, pair_o_o1, const(1))
        assert result.weights == (Fraction(1),)
        assert nu_compare(result.value, NuValue.zero()) != GREATER


class TestPairCanonical:
    def test_nonconvex_example(self, lat_b3, pair_b3):
        result = pair_canonical(pair_b3, RatPoly.zero(), bound=6)
        assert result.source == "closed-form"
        assert result.filtration.chain == ("F", "O5+O", "O5")
        assert result.filtration.weights == (-1, 0, 3)
        assert result.value == NuValue(P({0: 10}), Fraction(10))

    def test_agrees_with_oracle(self, lat_b3, pair_b3):
        from thetastab import brute_force_max

        result = pair_canonical(pair_b3, RatPoly.zero(), bound=6)
        check = brute_force_max(lat_b3, pair=pair_b3, delta=RatPoly.zero(), bound=6)
        assert check.best.chain == result.filtration.chain
        assert check.best.weights == result.filtration.weights

    def test_semistable_raises(self, pair_o_o1):
        with pytest.raises(Semistable):
            pair_canonical(pair_o_o1, const(1), bound=4)

    def test_high_degree_dispatch(self, pair_o_o1):
        result = pair_canonical(pair_o_o1, P({1: 1}), bound=4)
        assert result.source == "high-degree"
        assert result.filtration.chain == ("F", "O")
