"""Exact dense statevector simulation of the {H, X, Z, CX, CCX, MCX} gate set.

Amplitudes are complex128 and the basis convention is little-endian
everywhere: bit k of a basis index (weight 2^k) is qubit k. Gate kernels
work on numpy views of the amplitude array reshaped to one axis per
qubit, so a gate touching few qubits only moves the sub-block it selects.

Measurement is terminal sampling only. Sampling draws shots by inverse
CDF over the marginal distribution of the requested qubits, with
uniforms from PCG64 (O'Neill's permuted congruential generator,
XSL-RR 128/64 variant, as shipped by numpy and seeded through numpy's
SeedSequence). Identical (state, qubits, shots, seed) give an identical
histogram on every platform.

Widths above ``max_qubits()`` (default 26, about 1 GiB of amplitudes)
are refused; set QOBF_MAX_QUBITS or pass an explicit max_width to go
bigger.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, GateOp
from .errors import ConstraintError, ResourceLimitError

DEFAULT_MAX_QUBITS = 26

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def max_qubits() -> int:
    """Width cap: QOBF_MAX_QUBITS if set, else 26."""
    raw = os.environ.get("QOBF_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        return int(raw)
    except ValueError:
        raise ConstraintError(f"QOBF_MAX_QUBITS={raw!r} is not an integer") from None


@dataclass
class StateVector:
    """Dense pure state over 2^width basis states."""

    width: int
    amplitudes: np.ndarray

    def norm_error(self) -> float:
        """|sum of |amplitude|^2 - 1|, should stay below 1e-9."""
        return abs(float(np.sum(self.amplitudes.real**2 + self.amplitudes.imag**2)) - 1.0)


@dataclass
class Histogram:
    """Shot counts keyed by bitstring; the first sampled qubit is the rightmost character."""

    width: int
    entries: dict[str, int]
    shots: int

    def __post_init__(self):
        if sum(self.entries.values()) != self.shots:
            raise ValueError("histogram counts must sum to shots")
        for key in self.entries:
            if len(key) != self.width or set(key) - {"0", "1"}:
                raise ValueError(f"bad histogram key {key!r} for width {self.width}")


def zero_state(width: int, max_width: int | None = None) -> StateVector:
    """|0...0> on ``width`` qubits."""
    cap = max_qubits() if max_width is None else max_width
    if width < 1:
        raise ConstraintError(f"width must be >= 1, got {width}")
    if width > cap:
        size = 2**width * 16
        pretty = (f"{size / 2**30:.1f} GiB" if size >= 2**30
                  else f"{size / 2**20:.1f} MiB")
        raise ResourceLimitError(
            f"width {width} needs an amplitude array of 2^{width} = {2**width} "
            f"complex doubles ({pretty}); cap is {cap} "
            f"qubits (QOBF_MAX_QUBITS overrides)"
        )
    amplitudes = np.zeros(2**width, dtype=np.complex128)
    amplitudes[0] = 1.0
    return StateVector(width, amplitudes)


def basis_state(width: int, index: int, max_width: int | None = None) -> StateVector:
    """Computational-basis state |index>."""
    state = zero_state(width, max_width)
    if not 0 <= index < 2**width:
        raise ConstraintError(f"basis index {index} out of range for width {width}")
    state.amplitudes[0] = 0.0
    state.amplitudes[index] = 1.0
    return state


def _halves(state: StateVector, gate: GateOp):
    """Views of the amplitude block selected by the controls, split on the target bit.

    Reshaped row-major, axis j is qubit width-1-j.
    """
    width = state.width
    view = state.amplitudes.reshape((2,) * width)
    # length-1 slices (not integer indices) keep every result a real view;
    # integer indexing would collapse a fully-pinned selection to a scalar copy
    sel = [slice(None)] * width
    for c in gate.controls:
        sel[width - 1 - c] = slice(1, 2)
    sel0 = list(sel)
    sel1 = list(sel)
    sel0[width - 1 - gate.target] = slice(0, 1)
    sel1[width - 1 - gate.target] = slice(1, 2)
    return view[tuple(sel0)], view[tuple(sel1)]


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Apply one gate in place and return the state."""
    if max(gate.qubits()) >= state.width:
        raise ValueError(
            f"gate {gate.kind} touches qubit {max(gate.qubits())}, "
            f"state width {state.width}"
        )
    a, b = _halves(state, gate)
    if gate.kind == "h":
        tmp = a - b
        a += b
        a *= _INV_SQRT2
        tmp *= _INV_SQRT2
        b[...] = tmp
    elif gate.kind == "z":
        b *= -1.0
    else:  # x, cx, ccx, mcx all flip the target where the controls are 1
        tmp = a.copy()
        a[...] = b
        b[...] = tmp
    return state


def run_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Fold apply_gate over the circuit's ops, in order."""
    if circuit.width != state.width:
        raise ValueError(
            f"circuit width {circuit.width} != state width {state.width}"
        )
    for op in circuit.ops:
        apply_gate(state, op)
    return state


def _check_subset(state: StateVector, qubits) -> list[int]:
    qubits = list(qubits)
    if not qubits:
        raise ValueError("qubit subset must not be empty")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit indices: {qubits}")
    for q in qubits:
        if not 0 <= q < state.width:
            raise ValueError(f"qubit {q} out of range for width {state.width}")
    return qubits


def marginal_probabilities(state: StateVector, qubits) -> np.ndarray:
    """Marginal over the listed qubits as a length-2^m array.

    Bit k of the returned array's index is the value of ``qubits[k]``.
    """
    qubits = _check_subset(state, qubits)
    width = state.width
    probs = state.amplitudes.real**2 + state.amplitudes.imag**2
    tensor = probs.reshape((2,) * width)
    keep = {width - 1 - q for q in qubits}
    drop = tuple(ax for ax in range(width) if ax not in keep)
    if drop:
        tensor = tensor.sum(axis=drop)
    remaining = sorted(keep)
    desired = [width - 1 - q for q in reversed(qubits)]
    tensor = tensor.transpose([remaining.index(ax) for ax in desired])
    return np.ascontiguousarray(tensor).reshape(-1)


def probabilities_of_subset(state: StateVector, qubits) -> dict[str, float]:
    """Marginal distribution keyed by sub-bitstring (first listed qubit rightmost).

    Exact zeros are omitted; the returned values sum to 1 within 1e-9.
    """
    qubits = list(qubits)
    marginal = marginal_probabilities(state, qubits)
    m = len(qubits)
    return {
        format(i, f"0{m}b"): float(p)
        for i, p in enumerate(marginal)
        if p > 0.0
    }


def sample(state: StateVector, qubits, shots: int, seed: int) -> Histogram:
    """Draw ``shots`` outcomes from the marginal over ``qubits``.

    Inverse-CDF sampling: PCG64(seed) uniforms looked up in the
    cumulative marginal. Deterministic for a given seed.
    """
    if shots < 1:
        raise ConstraintError(f"shots must be >= 1, got {shots}")
    if seed < 0:
        raise ConstraintError(f"seed must be >= 0, got {seed}")
    qubits = list(qubits)
    marginal = marginal_probabilities(state, qubits)
    cdf = np.cumsum(marginal)
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(shots)
    outcomes = np.searchsorted(cdf, draws, side="right")
    outcomes = np.minimum(outcomes, len(marginal) - 1)
    counts = np.bincount(outcomes, minlength=len(marginal))
    m = len(qubits)
    entries = {
        format(i, f"0{m}b"): int(c) for i, c in enumerate(counts) if c > 0
    }
    return Histogram(m, entries, shots)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2."""
    if a.width != b.width:
        raise ValueError("state widths differ")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
