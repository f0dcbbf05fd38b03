import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimkit.dimension import (
    DIMENSIONLESS,
    DimensionVector,
    dim_div,
    dim_mul,
    dim_pow,
    format_dimension,
    format_symbolic,
    is_comparable,
    parse_dimension,
)
from dimkit.errors import DimensionParseError, DimensionRangeError, DimensionValidationError

exponents = st.tuples(*[st.integers(min_value=-4, max_value=4) for _ in range(7)])
vectors = exponents.map(DimensionVector)


def test_parse_force_per_length_encoding():
    dv = parse_dimension("A0E0L0I0M1H0T-2D0")
    assert dv == DimensionVector.of(M=1, T=-2)
    assert not dv.dimensionless


def test_parse_dimensionless_identity():
    dv = parse_dimension("A0E0L0I0M0H0T0D1")
    assert dv == DIMENSIONLESS
    assert dv.dimensionless


def test_parse_force_encoding():
    assert parse_dimension("A0E0L1I0M1H0T-2D0") == DimensionVector.of(L=1, M=1, T=-2)


@pytest.mark.parametrize(
    "text",
    ["", "A0E0L0", "B0E0L0I0M1H0T-2D0", "A0E0L0I0M1H0T-2D0x", "A0E0L0I0MxH0T-2D0"],
)
def test_parse_malformed_reports_offset(text):
    with pytest.raises(DimensionParseError) as err:
        parse_dimension(text)
    assert err.value.offset >= 0


def test_parse_inconsistent_d_digit():
    with pytest.raises(DimensionValidationError):
        parse_dimension("A0E0L0I0M1H0T-2D1")  # nonzero exponents demand D0
    with pytest.raises(DimensionValidationError):
        parse_dimension("A0E0L0I0M0H0T0D0")  # all-zero demands D1
    with pytest.raises(DimensionValidationError):
        parse_dimension("A0E0L0I0M0H0T0D2")


def test_parse_rejects_out_of_range_exponent():
    with pytest.raises(DimensionRangeError):
        parse_dimension("A0E0L13I0M0H0T0D0")


def test_format_examples():
    assert format_dimension(DimensionVector.of(M=1, T=-2)) == "A0E0L0I0M1H0T-2D0"
    assert format_dimension(DIMENSIONLESS) == "A0E0L0I0M0H0T0D1"
    assert parse_dimension(format_dimension(DimensionVector.of(L=3, T=-1))) == DimensionVector.of(
        L=3, T=-1
    )


def test_format_symbolic_examples():
    assert format_symbolic(DimensionVector.of(L=1, M=1, T=-2)) == "LMT^-2"
    assert format_symbolic(DimensionVector.of(M=1, T=-2)) == "MT^-2"
    assert format_symbolic(DIMENSIONLESS) == "D"


@given(vectors)
def test_format_symbolic_omits_zero_bases(dv):
    text = format_symbolic(dv)
    for base, e in zip("AELIMHT", dv.exponents):
        assert (base in text) == (e != 0 and not dv.dimensionless) or dv.dimensionless


def test_mul_composes_energy_and_length(kb):
    joule = kb.unit("J").dimension
    meter = kb.unit("M").dimension
    assert dim_mul(joule, meter) == DimensionVector.of(L=3, M=1, T=-2)


def test_div_and_pow_examples():
    length = DimensionVector.of(L=1)
    time = DimensionVector.of(T=1)
    assert dim_div(length, time) == DimensionVector.of(L=1, T=-1)
    assert dim_div(length, length) == DIMENSIONLESS
    assert dim_pow(length, 3) == DimensionVector.of(L=3)
    assert dim_pow(DimensionVector.of(L=2, M=-1), 0) == DIMENSIONLESS


def test_overflow_raises():
    big = DimensionVector.of(L=12)
    with pytest.raises(DimensionRangeError):
        dim_mul(big, DimensionVector.of(L=1))
    with pytest.raises(DimensionRangeError):
        dim_pow(big, 2)


def test_comparable_examples():
    poundal = DimensionVector.of(L=1, M=1, T=-2)
    dyn_per_cm = DimensionVector.of(M=1, T=-2)
    assert is_comparable(poundal, poundal)
    assert not is_comparable(poundal, dyn_per_cm)


@given(vectors, vectors, vectors)
@settings(max_examples=200)
def test_abelian_group_laws(a, b, c):
    assert dim_mul(a, b) == dim_mul(b, a)
    assert dim_mul(dim_mul(a, b), c) == dim_mul(a, dim_mul(b, c))
    assert dim_mul(a, DIMENSIONLESS) == a
    assert dim_mul(a, dim_pow(a, -1)) == DIMENSIONLESS


@given(vectors, vectors)
def test_div_inverts_mul(a, b):
    assert dim_mul(dim_div(a, b), b) == a


@given(vectors)
def test_pow_two_is_self_product(a):
    assert dim_pow(a, 2) == dim_mul(a, a)


@given(vectors)
def test_roundtrip_parse_format(dv):
    assert parse_dimension(format_dimension(dv)) == dv


@given(vectors, vectors, vectors)
@settings(max_examples=200)
def test_comparable_is_equivalence(a, b, c):
    assert is_comparable(a, a)
    assert is_comparable(a, b) == is_comparable(b, a)
    if is_comparable(a, b) and is_comparable(b, c):
        assert is_comparable(a, c)


def test_randomized_roundtrip_bulk():
    rng = random.Random(20240501)
    for _ in range(2000):
        dv = DimensionVector(tuple(rng.randint(-12, 12) for _ in range(7)))
        assert parse_dimension(format_dimension(dv)) == dv
