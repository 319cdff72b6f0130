"""Compact textual descriptions of input states.

Grammar (family names are case-insensitive, no whitespace anywhere):

    spec     := family ("@" INT)?
    family   := "fock" ":" INT
              | "coherent" ":" FLOAT ("," FLOAT)?
              | "thermal" ":" FLOAT
              | "random" ":" INT "," INT
              | "sup" ":" term ("+" term)*
    term     := FLOAT "|" INT ">"

Examples: fock:3, coherent:1.5, coherent:0.5,-0.25, thermal:0.5@40,
random:8,2, sup:0.6|0>+0.8|3>@8.  The trailing @INT overrides the cutoff;
the second coherent FLOAT is the imaginary part; random takes dimension and
seed; superposition coefficients are normalized after parsing.

Parse failures raise :class:`~beamlab.errors.StateSpecError` carrying the
byte offset and the token classes acceptable at that point.  Problems that
only appear when the state is built (level above cutoff, truncation tail too
heavy) surface from the constructors as their own error types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError, StateSpecError
from .fock import (
    PureState,
    make_coherent,
    make_fock,
    make_random_pure,
    make_superposition,
    make_thermal,
)

FAMILIES = ("fock", "coherent", "thermal", "random", "sup")

_INT = re.compile(r"\d+")
_FLOAT = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class StateSpec:
    """Parsed value of a spec string: family, normalized params, optional cutoff."""

    family: str
    params: tuple
    cutoff: int | None = None


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.lower = text.lower()
        self.pos = 0

    def fail(self, *expected: str):
        raise StateSpecError(
            f"parse error at byte {self.pos} of {self.text!r}: expected {' or '.join(expected)}",
            offset=self.pos,
            expected=expected,
        )

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return "" if self.at_end() else self.text[self.pos]

    def take_literal(self, lit: str) -> bool:
        if self.lower.startswith(lit, self.pos):
            self.pos += len(lit)
            return True
        return False

    def expect_literal(self, lit: str):
        if not self.take_literal(lit):
            self.fail(f"'{lit}'")

    def take_int(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("INT")
        self.pos = m.end()
        return int(m.group())

    def take_float(self) -> float:
        m = _FLOAT.match(self.text, self.pos)
        if not m:
            self.fail("FLOAT")
        self.pos = m.end()
        value = float(m.group())
        if not np.isfinite(value):
            self.fail("finite FLOAT")
        return value


def parse_state_spec(text: str) -> StateSpec:
    """Parse a spec string into its value; see the module docstring for the grammar."""
    if not isinstance(text, str):
        raise StateSpecError(f"state spec must be a string, got {type(text).__name__}")
    cur = _Cursor(text)
    family = None
    for name in FAMILIES:
        if cur.take_literal(name):
            family = name
            break
    if family is None:
        cur.fail(*FAMILIES)
    cur.expect_literal(":")
    if family == "fock":
        params = (cur.take_int(),)
    elif family == "thermal":
        params = (cur.take_float(),)
    elif family == "coherent":
        real = cur.take_float()
        imag = 0.0
        if cur.take_literal(","):
            imag = cur.take_float()
        params = (real, imag)
    elif family == "random":
        dim = cur.take_int()
        cur.expect_literal(",")
        params = (dim, cur.take_int())
    else:
        terms = []
        while True:
            coeff = cur.take_float()
            cur.expect_literal("|")
            level = cur.take_int()
            cur.expect_literal(">")
            terms.append((coeff, level))
            if not cur.take_literal("+"):
                break
        params = tuple(terms)
    cutoff = None
    if cur.take_literal("@"):
        cutoff = cur.take_int()
    if not cur.at_end():
        trailing = ["'@'", "end of input"]
        if family == "sup":
            trailing.insert(0, "'+'")
        elif family == "coherent" and cutoff is None and "," not in text[: cur.pos]:
            trailing.insert(0, "','")
        cur.fail(*trailing)
    return StateSpec(family, params, cutoff)


def _fmt_float(x: float) -> str:
    return repr(float(x))


def format_state_spec(spec: StateSpec) -> str:
    """Canonical text for a spec value; parsing it again gives an equal value."""
    if spec.family == "fock":
        body = f"fock:{spec.params[0]}"
    elif spec.family == "thermal":
        body = f"thermal:{_fmt_float(spec.params[0])}"
    elif spec.family == "coherent":
        real, imag = spec.params
        body = f"coherent:{_fmt_float(real)}"
        if imag != 0.0:
            body += f",{_fmt_float(imag)}"
    elif spec.family == "random":
        body = f"random:{spec.params[0]},{spec.params[1]}"
    elif spec.family == "sup":
        body = "sup:" + "+".join(f"{_fmt_float(c)}|{lvl}>" for c, lvl in spec.params)
    else:
        raise StateSpecError(f"unknown family {spec.family!r}")
    if spec.cutoff is not None:
        body += f"@{spec.cutoff}"
    return body


def build_state(spec: StateSpec):
    """Construct the state a spec describes (PureState or DensityMatrix)."""
    if spec.family == "fock":
        return make_fock(spec.params[0], spec.cutoff)
    if spec.family == "thermal":
        return make_thermal(spec.params[0], spec.cutoff)
    if spec.family == "coherent":
        return make_coherent(complex(*spec.params), spec.cutoff)
    if spec.family == "random":
        dim, seed = spec.params
        state = make_random_pure(dim, seed)
        if spec.cutoff is None or spec.cutoff == dim:
            return state
        if spec.cutoff < dim:
            raise CutoffError(f"cutoff {spec.cutoff} below the random-state dimension {dim}")
        amp = np.zeros(spec.cutoff, dtype=complex)
        amp[:dim] = state.amplitudes
        return PureState(amp)
    return make_superposition(spec.params, spec.cutoff)
