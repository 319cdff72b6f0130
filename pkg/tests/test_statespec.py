import numpy as np
import pytest

from beamlab import (
    CutoffError,
    DensityMatrix,
    PureState,
    StateSpecError,
    TruncationError,
    build_state,
    format_state_spec,
    parse_state_spec,
)
from beamlab.statespec import StateSpec

ROUND_TRIP_SPECS = [
    "fock:0",
    "fock:6",
    "fock:2@8",
    "coherent:1.5",
    "coherent:0.5,-0.25",
    "coherent:1e-1",
    "thermal:0.5",
    "thermal:0.5@40",
    "random:8,2",
    "random:5,1@12",
    "sup:0.6|0>+0.8|3>",
    "sup:-0.6|0>+0.8|3>@8",
    "sup:1|0>+1|4>+2.5|2>",
]


@pytest.mark.parametrize("text", ROUND_TRIP_SPECS)
def test_round_trip(text):
    spec = parse_state_spec(text)
    assert parse_state_spec(format_state_spec(spec)) == spec


def test_case_insensitive_families():
    assert parse_state_spec("FOCK:3") == parse_state_spec("fock:3")
    assert parse_state_spec("Coherent:1.0") == parse_state_spec("coherent:1.0")
    assert parse_state_spec("SUP:0.6|0>+0.8|3>") == parse_state_spec("sup:0.6|0>+0.8|3>")


def test_parsed_values():
    assert parse_state_spec("fock:6") == StateSpec("fock", (6,), None)
    assert parse_state_spec("fock:2@8") == StateSpec("fock", (2,), 8)
    assert parse_state_spec("coherent:1.5") == StateSpec("coherent", (1.5, 0.0), None)
    assert parse_state_spec("coherent:0.5,-0.25") == StateSpec("coherent", (0.5, -0.25), None)
    assert parse_state_spec("random:8,2") == StateSpec("random", (8, 2), None)
    assert parse_state_spec("sup:0.6|0>+0.8|3>") == StateSpec(
        "sup", ((0.6, 0), (0.8, 3)), None
    )


@pytest.mark.parametrize("text,offset,expected_fragment", [
    ("blah:3", 0, "fock"),
    ("fock", 4, "':'"),
    ("fock:", 5, "INT"),
    ("fock:x", 5, "INT"),
    ("fock:3x", 6, "'@'"),
    ("fock:3@", 7, "INT"),
    ("fock:-3", 5, "INT"),
    ("coherent:", 9, "FLOAT"),
    ("coherent:1.0,,2", 13, "FLOAT"),
    ("random:5", 8, "','"),
    ("random:5,", 9, "INT"),
    ("sup:", 4, "FLOAT"),
    ("sup:0.6|0", 9, "'>'"),
    ("sup:0.6|0>x", 10, "'+'"),
    ("sup:0.6|0>+", 11, "FLOAT"),
    ("", 0, "fock"),
])
def test_parse_errors_carry_offset_and_expectations(text, offset, expected_fragment):
    with pytest.raises(StateSpecError) as err:
        parse_state_spec(text)
    assert err.value.offset == offset
    assert any(expected_fragment in e for e in err.value.expected)
    assert f"byte {offset}" in str(err.value)


def test_parse_rejects_non_string():
    with pytest.raises(StateSpecError):
        parse_state_spec(12)


def test_build_fock_default_cutoff():
    state = build_state(parse_state_spec("fock:3"))
    assert isinstance(state, PureState)
    assert state.cutoff == 4


def test_build_superposition_with_cutoff():
    state = build_state(parse_state_spec("sup:0.6|0>+0.8|3>@8"))
    assert state.cutoff == 8
    assert abs(state.amplitudes[3] - 0.8) < 1e-15


def test_build_random_padded():
    plain = build_state(parse_state_spec("random:5,1"))
    padded = build_state(parse_state_spec("random:5,1@12"))
    assert padded.cutoff == 12
    assert np.array_equal(padded.amplitudes[:5], plain.amplitudes)
    assert np.max(np.abs(padded.amplitudes[5:])) == 0.0
    with pytest.raises(CutoffError):
        build_state(parse_state_spec("random:5,1@3"))


def test_build_thermal_is_mixed():
    state = build_state(parse_state_spec("thermal:0.5@40"))
    assert isinstance(state, DensityMatrix)


def test_build_semantic_errors_differ_from_parse_errors():
    with pytest.raises(TruncationError):
        build_state(parse_state_spec("coherent:2.0@8"))
    with pytest.raises(TruncationError):
        build_state(parse_state_spec("thermal:1.0@5"))
    with pytest.raises(CutoffError):
        build_state(parse_state_spec("fock:4@3"))


def test_build_coherent_complex():
    state = build_state(parse_state_spec("coherent:0.0,1.0"))
    # pure imaginary amplitude rotates the n = 1 component by i
    ratio = state.amplitudes[1] / abs(state.amplitudes[1])
    assert abs(ratio - 1j) < 1e-12


def test_format_canonical():
    assert format_state_spec(parse_state_spec("FOCK:3")) == "fock:3"
    assert format_state_spec(parse_state_spec("coherent:1.5")) == "coherent:1.5"
    assert format_state_spec(parse_state_spec("sup:0.6|0>+0.8|3>@8")) == "sup:0.6|0>+0.8|3>@8"
