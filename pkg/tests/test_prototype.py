import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clfilter.prototype import (
    MAX_ORDER,
    Family,
    PrototypeSpec,
    attenuation_db,
    lowpass_prototype,
    required_order,
)

from oracles import (
    butterworth_attenuation_db,
    chebyshev_attenuation_db,
    chebyshev_g_by_ladder_expansion,
    smallest_order,
)

# Frozen from chebyshev_g_by_ladder_expansion(n, 0.5)
CHEBYSHEV_0P5 = {
    1: [1.000000, 0.698623, 1.000000],
    2: [1.000000, 1.402894, 0.707084, 1.984056],
    3: [1.000000, 1.596280, 1.096692, 1.596280, 1.000000],
    4: [1.000000, 1.670306, 1.192565, 2.366115, 0.841864, 1.984056],
    5: [1.000000, 1.705770, 1.229627, 2.540827, 1.229627, 1.705770, 1.000000],
    6: [1.000000, 1.725363, 1.247868, 2.606366, 1.313656, 2.475841, 0.869614, 1.984056],
    7: [1.000000, 1.737291, 1.258236, 2.638292, 1.344334, 2.638292, 1.258236, 1.737291, 1.000000],
    8: [1.000000, 1.745079, 1.264715, 2.656417, 1.359045, 2.696422, 1.338882, 2.509265,
        0.879551, 1.984056],
    9: [1.000000, 1.750439, 1.269043, 2.667780, 1.367326, 2.723904, 1.367326, 2.667780,
        1.269043, 1.750439, 1.000000],
    10: [1.000000, 1.754284, 1.272083, 2.675414, 1.372495, 2.739224, 1.380619, 2.723108,
         1.348457, 2.523883, 0.884191, 1.984056],
}


class TestLowpassPrototype:
    def test_butterworth_order3(self):
        g = lowpass_prototype(PrototypeSpec(3, "maximally-flat")).g
        assert g == pytest.approx([1, 1, 2, 1, 1], abs=1e-12)

    def test_butterworth_order1(self):
        assert lowpass_prototype(PrototypeSpec(1, "maximally-flat")).g == pytest.approx([1, 2, 1])

    def test_chebyshev_order3_half_db(self):
        g = lowpass_prototype(PrototypeSpec(3, "equal-ripple", 0.5)).g
        assert g == pytest.approx([1, 1.5963, 1.0967, 1.5963, 1.0], abs=5e-5)

    @pytest.mark.parametrize("n", sorted(CHEBYSHEV_0P5))
    def test_chebyshev_matches_frozen_ladder_expansion(self, n):
        g = lowpass_prototype(PrototypeSpec(n, "equal-ripple", 0.5)).g
        assert g == pytest.approx(CHEBYSHEV_0P5[n], abs=1e-6)

    @pytest.mark.parametrize("ripple", [0.01, 0.1, 0.5, 1.0, 3.0])
    @pytest.mark.parametrize("n", range(1, MAX_ORDER + 1))
    def test_chebyshev_matches_live_ladder_expansion(self, n, ripple):
        g = lowpass_prototype(PrototypeSpec(n, "equal-ripple", ripple)).g
        assert g == pytest.approx(chebyshev_g_by_ladder_expansion(n, ripple), rel=1e-8)

    @pytest.mark.parametrize("n", range(1, MAX_ORDER + 1))
    def test_butterworth_closed_form(self, n):
        g = lowpass_prototype(PrototypeSpec(n, "maximally-flat")).g
        expected = [1.0] + [2 * math.sin((2 * k - 1) * math.pi / (2 * n)) for k in range(1, n + 1)]
        assert list(g) == pytest.approx(expected + [1.0], abs=1e-12)

    @pytest.mark.parametrize("family", list(Family))
    @pytest.mark.parametrize("n", range(1, 11))
    def test_invariants(self, n, family):
        g = lowpass_prototype(PrototypeSpec(n, family, 0.5)).g
        assert len(g) == n + 2
        assert g[0] == 1.0
        assert all(x > 0 for x in g)
        if family is Family.MAXIMALLY_FLAT:
            assert g[-1] == 1.0
        if family is Family.MAXIMALLY_FLAT or n % 2:
            for k in range(n + 2):
                assert g[k] == pytest.approx(g[n + 1 - k], abs=1e-12)

    def test_even_chebyshev_load_is_not_unity(self):
        g = lowpass_prototype(PrototypeSpec(4, "equal-ripple", 0.5)).g
        assert g[-1] == pytest.approx(1.984056, abs=1e-6)

    @pytest.mark.parametrize("order", [0, -2, MAX_ORDER + 1, 2.5, True])
    def test_rejects_bad_order(self, order):
        with pytest.raises(ValueError):
            PrototypeSpec(order)

    @pytest.mark.parametrize("ripple", [0.0, -0.5])
    def test_rejects_nonpositive_ripple(self, ripple):
        with pytest.raises(ValueError):
            PrototypeSpec(3, "equal-ripple", ripple)

    def test_ripple_ignored_for_maximally_flat(self):
        PrototypeSpec(3, "maximally-flat", 0.0)

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError):
            PrototypeSpec(3, "elliptic")


class TestRequiredOrder:
    def test_butterworth_cutoff(self):
        assert required_order(3.01, 3.01, 1.0, "maximally-flat") == 1

    def test_butterworth_40db_at_twice_cutoff(self):
        expected = smallest_order(lambda n: butterworth_attenuation_db(2.0, n), 40.0)
        assert expected == 7
        assert required_order(0.5, 40.0, 2.0, "maximally-flat") == 7

    def test_chebyshev_30db(self):
        expected = smallest_order(lambda n: chebyshev_attenuation_db(2.0, n, 0.5), 30.0)
        assert expected == 4
        assert required_order(0.5, 30.0, 2.0, "equal-ripple") == 4

    @pytest.mark.parametrize("omega", [0.5, 0.999, -2.0])
    def test_rejects_stop_freq_inside_passband(self, omega):
        with pytest.raises(ValueError):
            required_order(0.5, 30, omega, "equal-ripple")

    def test_rejects_unreachable(self):
        with pytest.raises(ValueError, match="order"):
            required_order(0.5, 400, 1.01, "maximally-flat")

    @given(
        st.floats(1.0, 10.0),
        st.integers(1, 12),
        st.floats(0.01, 3.0),
    )
    def test_attenuation_matches_polynomial_form(self, omega, n, ripple):
        assert attenuation_db(omega, n, "equal-ripple", ripple) == pytest.approx(
            chebyshev_attenuation_db(omega, n, ripple), rel=1e-9, abs=1e-9
        )
        assert attenuation_db(omega, n, "maximally-flat") == pytest.approx(
            butterworth_attenuation_db(omega, n), rel=1e-12
        )

    @given(st.floats(1.001, 20.0), st.integers(1, 14))
    def test_butterworth_attenuation_grows_with_order(self, omega, n):
        assert attenuation_db(omega, n + 1, "maximally-flat") >= attenuation_db(omega, n, "maximally-flat")

    @given(
        st.floats(0.1, 1.0),
        st.floats(1.0, 60.0),
        st.floats(0.0, 30.0),
        st.floats(1.2, 5.0),
        st.sampled_from(list(Family)),
    )
    def test_monotone_in_attenuation(self, ripple, atten, extra, omega, family):
        try:
            strict = required_order(ripple, atten + extra, omega, family)
        except ValueError:
            return
        assert strict >= required_order(ripple, atten, omega, family)

    def test_enumeration_oracle_grid(self):
        for omega in np.linspace(1.1, 4.0, 7):
            for atten in (10.0, 25.0, 50.0):
                for ripple in (0.1, 0.5, 1.0):
                    exp = smallest_order(lambda n: chebyshev_attenuation_db(omega, n, ripple), atten)
                    if exp <= MAX_ORDER:
                        assert required_order(ripple, atten, omega, "equal-ripple") == exp
