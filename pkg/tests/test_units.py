import math

import pytest
from hypothesis import given, strategies as st

from bubblerad import (
    DEFAULT_COUPLING,
    REDUCED_PLANCK,
    SPEED_OF_LIGHT,
    PhysicalConstants,
    Scales,
    UnitError,
    from_internal,
    to_internal,
)


def test_constants_are_pinned():
    c = PhysicalConstants()
    assert c.c == 299792458.0
    assert c.hbar == 1.054571817e-34
    assert c.alpha == DEFAULT_COUPLING == 1e-4


def test_constants_reject_tampering():
    with pytest.raises(ValueError):
        PhysicalConstants(c=3e8)
    with pytest.raises(ValueError):
        PhysicalConstants(hbar=1e-34)
    with pytest.raises(ValueError):
        PhysicalConstants(alpha=0.0)
    with pytest.raises(ValueError):
        PhysicalConstants(alpha=math.inf)


def test_scales_validation():
    Scales(1e-6, 1e-9)
    with pytest.raises(ValueError):
        Scales(0.0, 1e-9)
    with pytest.raises(ValueError):
        Scales(1e-6, -1.0)
    with pytest.raises(ValueError):
        Scales(math.nan, 1e-9)


def test_length_conversion():
    s = Scales(length_m=2e-6, time_s=1e-9)
    assert to_internal(2.0, "um", s) == pytest.approx(1.0)
    assert to_internal(2.0, "µm", s) == pytest.approx(1.0)
    assert to_internal(2e-6, "m", s) == pytest.approx(1.0)
    assert from_internal(1.0, "um", s) == pytest.approx(2.0)


def test_time_conversion():
    s = Scales(length_m=1e-6, time_s=5e-9)
    assert to_internal(5.0, "ns", s) == pytest.approx(1.0)
    assert from_internal(2.0, "s", s) == pytest.approx(1e-8)


def test_velocity_measured_in_c():
    s = Scales(length_m=1e-6, time_s=1e-9)
    assert to_internal(SPEED_OF_LIGHT, "m/s", s) == pytest.approx(1.0)
    assert to_internal(299792.458, "km/s", s) == pytest.approx(1.0)
    assert from_internal(1.0, "m/s", s) == pytest.approx(SPEED_OF_LIGHT)


def test_unknown_tag_and_nonfinite():
    s = Scales(1.0, 1.0)
    with pytest.raises(UnitError):
        to_internal(1.0, "furlongs", s)
    with pytest.raises(UnitError):
        from_internal(1.0, "eV", s)
    with pytest.raises(UnitError):
        to_internal(math.inf, "m", s)


@given(
    value=st.floats(min_value=1e-12, max_value=1e12),
    unit=st.sampled_from(["um", "m", "ns", "s", "km/s", "m/s"]),
    length=st.floats(min_value=1e-9, max_value=1e3),
    time=st.floats(min_value=1e-12, max_value=1e3),
)
def test_round_trip_property(value, unit, length, time):
    s = Scales(length, time)
    back = from_internal(to_internal(value, unit, s), unit, s)
    assert back == pytest.approx(value, rel=1e-12)


def test_hbar_matches_planck_constant():
    # h = 6.62607015e-34 J s exactly (SI definition); hbar = h / (2 pi)
    assert REDUCED_PLANCK == pytest.approx(6.62607015e-34 / (2 * math.pi), rel=1e-9)
