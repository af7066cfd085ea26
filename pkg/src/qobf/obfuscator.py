"""End-to-end pipeline: plan, build, simulate, sample, decode.

A target natural number is hidden as the set of register triplets
(x, y, z) with x + y + z = target, each register n bits wide. The full
circuit puts the 3n input qubits into uniform superposition, prepares
the phase ancilla in |->, and applies the planned number of
oracle-plus-diffuser rounds. Measuring the input qubits then lands on a
valid triplet with probability close to the closed-form ideal.

Register layout over 3n+5 qubits: x on [0, n), y on [n, 2n), z on
[2n, 3n), followed by the two carry qubits and two adder ancillas of
the triple sum, with the |-> phase ancilla last (index 3n+4).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import triple_sum_layout
from .circuit import Circuit, h, x
from .errors import ConstraintError
from .grover import build_diffuser, build_oracle, make_plan
from .statevector import (
    StateVector,
    marginal_probabilities,
    run_circuit,
    sample,
    zero_state,
)

DEFAULT_SHOTS = 1024
DEFAULT_SEED = 0


@dataclass(frozen=True)
class ObfuscationPlan:
    """Everything needed to build and size the circuit for one target."""

    target: int
    bits: int
    space_size: int
    solution_count: int
    iterations: int
    theoretical_success: float
    qubit_map: dict = field(compare=False)
    total_qubits: int

    def __post_init__(self):
        if self.target < 1:
            raise ConstraintError(f"target must be >= 1, got {self.target}")
        bound = reachable_bound(self.bits)
        if self.target > bound:
            raise ConstraintError(
                f"target {self.target} exceeds the {self.bits}-bit bound {bound}"
            )
        if self.total_qubits != 3 * self.bits + 5:
            raise ValueError("total_qubits must be 3*bits + 5")

    @property
    def input_qubits(self) -> tuple[int, ...]:
        return self.qubit_map["x"] + self.qubit_map["y"] + self.qubit_map["z"]


@dataclass(frozen=True)
class DecodedHistogram:
    """Sampled measurement outcomes decoded into integer triplets.

    ``valid_fraction`` is the sampled estimate; ``exact_success`` is the
    exact marginal probability of the solution set read straight off the
    final state, immune to shot noise.
    """

    target: int
    bits: int
    iterations: int
    shots: int
    valid_fraction: float
    exact_success: float
    entries: dict

    def __post_init__(self):
        if sum(self.entries.values()) != self.shots:
            raise ValueError("entry counts must sum to shots")
        if not 0.0 <= self.valid_fraction <= 1.0:
            raise ValueError("valid_fraction must be a probability")
        if not 0.0 <= self.exact_success <= 1.0:
            raise ValueError("exact_success must be a probability")


def reachable_bound(bits: int) -> int:
    """Largest target expressible as a sum of three ``bits``-bit values."""
    return 3 * (2**bits - 1)


def plan(target: int, bits: int | None = None) -> ObfuscationPlan:
    """Choose the register width (minimal unless given) and plan the search.

    Raises a constraint error for target < 1, or when an explicit
    ``bits`` is too small for the target.
    """
    if target < 1:
        raise ConstraintError(f"target must be >= 1, got {target}")
    if bits is None:
        bits = 1
        while reachable_bound(bits) < target:
            bits += 1
    else:
        if bits < 1:
            raise ConstraintError(f"bits must be >= 1, got {bits}")
        bound = reachable_bound(bits)
        if target > bound:
            raise ConstraintError(
                f"target {target} exceeds 3*(2^{bits} - 1) = {bound}; "
                f"use wider registers"
            )
    search = make_plan(target, bits)
    layout = triple_sum_layout(bits)
    grover_ancilla = 3 * bits + 4
    qubit_map = {
        "x": layout.x_qubits,
        "y": layout.y_qubits,
        "z": layout.z_qubits,
        "cout0": layout.cout0,
        "shared_ancilla": layout.shared_ancilla,
        "cout1": layout.cout1,
        "adder2_ancilla": layout.adder2_ancilla,
        "grover_ancilla": grover_ancilla,
    }
    return ObfuscationPlan(
        target=target,
        bits=bits,
        space_size=search.space_size,
        solution_count=search.solution_count,
        iterations=search.iterations,
        theoretical_success=search.theoretical_success,
        qubit_map=qubit_map,
        total_qubits=3 * bits + 5,
    )


def build_full_circuit(obf_plan: ObfuscationPlan) -> Circuit:
    """Initialization layer plus the planned number of Grover rounds."""
    width = obf_plan.total_qubits
    grover_ancilla = obf_plan.qubit_map["grover_ancilla"]
    labels = {
        name: spec if isinstance(spec, tuple) else (spec,)
        for name, spec in obf_plan.qubit_map.items()
    }
    circuit = Circuit(width, labels=labels)
    for q in obf_plan.input_qubits:
        circuit.append(h(q))
    circuit.append(x(grover_ancilla))
    circuit.append(h(grover_ancilla))
    oracle, _ = build_oracle(obf_plan.bits, obf_plan.target)
    diffuser = build_diffuser(obf_plan.input_qubits, grover_ancilla, width=width)
    for _ in range(obf_plan.iterations):
        circuit.extend(oracle.ops)
        circuit.extend(diffuser.ops)
    return circuit


def simulate(obf_plan: ObfuscationPlan) -> tuple[StateVector, float]:
    """Run the full circuit from |0...0>; returns (state, simulation seconds).

    The timing covers gate application only, not circuit construction.
    """
    circuit = build_full_circuit(obf_plan)
    state = zero_state(obf_plan.total_qubits)
    start = time.perf_counter()
    run_circuit(state, circuit)
    elapsed = time.perf_counter() - start
    return state, elapsed


def solution_probability(obf_plan: ObfuscationPlan, state: StateVector) -> float:
    """Exact marginal probability that the inputs decode to a valid triplet."""
    bits = obf_plan.bits
    marginal = marginal_probabilities(state, obf_plan.input_qubits)
    index = np.arange(marginal.size)
    mask = (1 << bits) - 1
    total = (index & mask) + ((index >> bits) & mask) + (index >> (2 * bits))
    value = float(marginal[total == obf_plan.target].sum())
    return min(max(value, 0.0), 1.0)


def decode(bitstring: str, bits: int) -> tuple[int, int, int]:
    """Split a sampled 3n-bit string into (x, y, z).

    The string is written most significant qubit first, so qubit 0 is
    the rightmost character: x is the last n characters, y the middle n,
    z the first n.
    """
    if len(bitstring) != 3 * bits:
        raise ConstraintError(
            f"bitstring length {len(bitstring)} != 3*{bits}"
        )
    xv = int(bitstring[-bits:], 2)
    yv = int(bitstring[-2 * bits:-bits], 2)
    zv = int(bitstring[:bits], 2)
    return xv, yv, zv


def encode(xv: int, yv: int, zv: int, bits: int) -> str:
    """Inverse of decode: pack a triplet into a 3n-bit string."""
    top = 2**bits
    for name, value in (("x", xv), ("y", yv), ("z", zv)):
        if not 0 <= value < top:
            raise ConstraintError(f"{name} = {value} does not fit {bits} bits")
    return format(zv, f"0{bits}b") + format(yv, f"0{bits}b") + format(xv, f"0{bits}b")


def run(obf_plan: ObfuscationPlan, shots: int = DEFAULT_SHOTS,
        seed: int = DEFAULT_SEED) -> DecodedHistogram:
    """Simulate, sample the input qubits, and decode every outcome."""
    state, _ = simulate(obf_plan)
    histogram = sample(state, obf_plan.input_qubits, shots, seed)
    entries: dict[tuple[int, int, int], int] = {}
    valid = 0
    for key, count in histogram.entries.items():
        triplet = decode(key, obf_plan.bits)
        entries[triplet] = count
        if sum(triplet) == obf_plan.target:
            valid += count
    return DecodedHistogram(
        target=obf_plan.target,
        bits=obf_plan.bits,
        iterations=obf_plan.iterations,
        shots=shots,
        valid_fraction=valid / shots,
        exact_success=solution_probability(obf_plan, state),
        entries=entries,
    )


def sorted_entries(histogram: DecodedHistogram) -> list[tuple[tuple[int, int, int], int]]:
    """Entries by count descending, ties by (x, y, z) ascending."""
    return sorted(histogram.entries.items(), key=lambda kv: (-kv[1], kv[0]))


def to_json_dict(histogram: DecodedHistogram) -> dict:
    """Stable wire form of a decoded histogram."""
    return {
        "n_value": histogram.target,
        "bits": histogram.bits,
        "iterations": histogram.iterations,
        "shots": histogram.shots,
        "valid_fraction": histogram.valid_fraction,
        "exact_success": histogram.exact_success,
        "counts": [
            {"x": xv, "y": yv, "z": zv, "count": count}
            for (xv, yv, zv), count in sorted_entries(histogram)
        ],
    }
