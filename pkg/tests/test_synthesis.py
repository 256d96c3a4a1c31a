import math
import warnings

import pytest
from hypothesis import given, strategies as st

from clfilter.prototype import PrototypeSpec, PrototypeValues, lowpass_prototype
from clfilter.synthesis import (
    FilterSpec,
    RealizabilityWarning,
    admittance_inverters,
    check_realizable,
    even_odd_impedances,
    synthesize,
)


def test_inverter_examples(ref_spec):
    g = PrototypeValues((1.0, 1.5963, 1.0967, 1.5963, 1.0))
    jz0 = admittance_inverters(ref_spec, g)
    assert len(jz0) == 4
    assert jz0[0] == pytest.approx(0.3137, abs=5e-5)
    assert jz0[1] == pytest.approx(0.1187, abs=5e-5)


def test_inverters_scale_with_bandwidth():
    g = lowpass_prototype(PrototypeSpec(3))
    small = admittance_inverters(FilterSpec(2e9, 1e-8), g)
    assert max(small) < 1e-3
    # ends go as sqrt(delta), inner ones linearly
    a = admittance_inverters(FilterSpec(2e9, 0.01), g)
    b = admittance_inverters(FilterSpec(2e9, 0.04), g)
    assert b[0] / a[0] == pytest.approx(2.0)
    assert b[1] / a[1] == pytest.approx(4.0)


@pytest.mark.parametrize(
    "jz0, expected",
    [(0.0, (50.0, 50.0)), (0.3137, (70.61, 39.24)), (0.1187, (56.64, 44.77))],
)
def test_even_odd_examples(jz0, expected):
    assert even_odd_impedances(jz0, 50.0) == pytest.approx(expected, abs=0.05)


@given(st.floats(0.0, 0.99), st.floats(1.0, 500.0))
def test_even_odd_identities(jz0, z0):
    ze, zo = even_odd_impedances(jz0, z0)
    assert ze - zo == pytest.approx(2 * z0 * jz0, rel=1e-12, abs=1e-12)
    assert ze + zo == pytest.approx(2 * z0 * (1 + jz0**2), rel=1e-12)
    ze1, zo1 = even_odd_impedances(jz0, 1.0)
    assert (ze, zo) == pytest.approx((z0 * ze1, z0 * zo1), rel=1e-12)


def test_even_odd_warns_outside_narrowband():
    with pytest.warns(RealizabilityWarning):
        even_odd_impedances(1.2, 50.0)


@pytest.mark.parametrize("jz0, z0", [(-0.1, 50.0), (0.1, 0.0), (0.1, -5.0)])
def test_even_odd_rejects(jz0, z0):
    with pytest.raises(ValueError):
        even_odd_impedances(jz0, z0)


def test_synthesize_reference_design(ref_sections):
    got = [(s.z0e, s.z0o) for s in ref_sections]
    expected = [(70.61, 39.24), (56.64, 44.77), (56.64, 44.77), (70.61, 39.24)]
    assert [s.index for s in ref_sections] == [1, 2, 3, 4]
    for (ze, zo), (xe, xo) in zip(got, expected):
        assert ze == pytest.approx(xe, abs=0.05)
        assert zo == pytest.approx(xo, abs=0.05)


def test_synthesize_n1_maximally_flat():
    spec = FilterSpec(2e9, 0.05, 50.0, PrototypeSpec(1, "maximally-flat"))
    s1, s2 = synthesize(spec)
    assert s1.jz0 == pytest.approx(s2.jz0, rel=1e-15)
    assert (s1.z0e, s1.z0o) == pytest.approx((s2.z0e, s2.z0o), rel=1e-15)


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
@pytest.mark.parametrize("family", ["maximally-flat", "equal-ripple"])
def test_symmetric_prototypes_give_mirror_designs(n, family):
    sections = synthesize(FilterSpec(1e9, 0.08, 50.0, PrototypeSpec(n, family, 0.5)))
    for a, b in zip(sections, reversed(sections)):
        assert a.jz0 == pytest.approx(b.jz0, rel=1e-12)


@pytest.mark.parametrize("delta", [0.0, -0.1, 1.0, 1.5])
def test_rejects_bad_delta(delta):
    with pytest.raises(ValueError):
        FilterSpec(2e9, delta)


def test_rejects_bad_frequency_and_impedance():
    with pytest.raises(ValueError):
        FilterSpec(0.0, 0.1)
    with pytest.raises(ValueError):
        FilterSpec(2e9, 0.1, z0=-50)


def test_rejects_prototype_length_mismatch(ref_spec):
    with pytest.raises(ValueError):
        admittance_inverters(ref_spec, PrototypeValues((1.0, 1.0, 1.0)))


def test_wideband_design_warns():
    with pytest.warns(RealizabilityWarning):
        synthesize(FilterSpec(2e9, 0.9, 50.0, PrototypeSpec(3)))


def test_reference_design_is_quiet(ref_spec):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        synthesize(ref_spec)


def test_check_realizable_reports_indices(ref_sections):
    assert check_realizable(ref_sections, 50.0) == []
    with pytest.warns(RealizabilityWarning):
        assert check_realizable(ref_sections, 50.0, z0e_max=1.2) == [1, 4]
