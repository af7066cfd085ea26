"""Pipeline: planning, circuit assembly, simulation, decoding, wire format."""

import itertools
import math

import pytest

from qobf.circuit import gate_counts
from qobf.errors import ConstraintError
from qobf.obfuscator import (
    DecodedHistogram,
    ObfuscationPlan,
    build_full_circuit,
    decode,
    encode,
    plan,
    run,
    simulate,
    solution_probability,
    sorted_entries,
    to_json_dict,
)


def test_plan_picks_minimal_register_width():
    assert plan(7).bits == 2  # 3*(2^2-1)=9 >= 7 but 3*(2^1-1)=3 < 7
    assert plan(22).bits == 4  # 21 < 22 <= 45
    assert plan(1).bits == 1
    assert plan(3).bits == 1
    assert plan(4).bits == 2


def test_plan_case_study_values():
    case = plan(19, 3)
    assert case.bits == 3
    assert case.space_size == 512
    assert case.solution_count == 6
    assert case.iterations == 7
    assert case.total_qubits == 14
    assert case.theoretical_success == pytest.approx(
        math.sin(15 * math.asin(math.sqrt(6 / 512))) ** 2
    )


def test_plan_rejects_bad_targets():
    with pytest.raises(ConstraintError):
        plan(0)
    with pytest.raises(ConstraintError):
        plan(-4)
    with pytest.raises(ConstraintError):
        plan(5, 0)
    with pytest.raises(ConstraintError) as info:
        plan(7, 1)
    assert "3" in str(info.value)  # message cites the 3*(2^bits - 1) bound


def test_plan_qubit_map_layout():
    case = plan(19, 3)
    assert case.qubit_map["x"] == (0, 1, 2)
    assert case.qubit_map["y"] == (3, 4, 5)
    assert case.qubit_map["z"] == (6, 7, 8)
    assert case.qubit_map["cout0"] == 9
    assert case.qubit_map["shared_ancilla"] == 10
    assert case.qubit_map["cout1"] == 11
    assert case.qubit_map["adder2_ancilla"] == 12
    assert case.qubit_map["grover_ancilla"] == 13
    assert case.input_qubits == tuple(range(9))


def test_obfuscation_plan_validation():
    case = plan(3, 1)
    with pytest.raises(ValueError):
        ObfuscationPlan(
            target=case.target, bits=case.bits, space_size=case.space_size,
            solution_count=case.solution_count, iterations=case.iterations,
            theoretical_success=case.theoretical_success,
            qubit_map=case.qubit_map, total_qubits=7,
        )
    with pytest.raises(ConstraintError):
        ObfuscationPlan(
            target=9, bits=1, space_size=8, solution_count=1, iterations=1,
            theoretical_success=0.5, qubit_map=case.qubit_map, total_qubits=8,
        )


def test_full_circuit_width_and_prelude():
    for target, bits in [(3, 1), (7, 2), (19, 3)]:
        case = plan(target, bits)
        circuit = build_full_circuit(case)
        assert circuit.width == 3 * bits + 5
        prelude = circuit.ops[: 3 * bits + 2]
        kinds = [op.kind for op in prelude]
        assert kinds == ["h"] * (3 * bits) + ["x", "h"]
        assert prelude[-1].target == case.qubit_map["grover_ancilla"]
        assert circuit.labels["x"] == case.qubit_map["x"]


def test_zero_iteration_plan_builds_bare_initialization():
    base = plan(3, 1)
    degenerate = ObfuscationPlan(
        target=base.target, bits=base.bits, space_size=base.space_size,
        solution_count=base.solution_count, iterations=0,
        theoretical_success=base.solution_count / base.space_size,
        qubit_map=base.qubit_map, total_qubits=base.total_qubits,
    )
    circuit = build_full_circuit(degenerate)
    assert gate_counts(circuit)["total"] == 3 * base.bits + 2


def test_simulation_preserves_norm():
    state, elapsed = simulate(plan(7, 2))
    assert state.norm_error() < 1e-9
    assert elapsed >= 0.0


def test_exact_success_matches_closed_form_smallest_case():
    case = plan(3, 1)
    state, _ = simulate(case)
    got = solution_probability(case, state)
    assert got == pytest.approx(case.theoretical_success, abs=1e-9)


def test_run_smallest_case_favors_the_single_triplet():
    case = plan(3, 1)
    histogram = run(case, shots=512, seed=1)
    top_triplet, top_count = sorted_entries(histogram)[0]
    assert top_triplet == (1, 1, 1)
    assert top_count / 512 > 0.8
    assert histogram.valid_fraction == top_count / 512
    assert histogram.exact_success == pytest.approx(
        case.theoretical_success, abs=1e-9
    )


def test_run_is_deterministic():
    case = plan(7, 2)
    first = run(case, shots=200, seed=11)
    second = run(case, shots=200, seed=11)
    assert first == second
    assert run(case, shots=200, seed=12) != first


def test_decode_known_bitstring():
    # qubit values q0..q8 = 1,1,1,1,1,1,1,0,1 written msb-first
    assert decode("101111111", 3) == (7, 7, 5)
    assert decode("000000000", 3) == (0, 0, 0)
    assert decode("001", 1) == (1, 0, 0)
    with pytest.raises(ConstraintError):
        decode("0101", 3)


def test_encode_decode_round_trip_exhaustive_n2():
    for triplet in itertools.product(range(4), repeat=3):
        assert decode(encode(*triplet, bits=2), 2) == triplet
    with pytest.raises(ConstraintError):
        encode(4, 0, 0, bits=2)


def test_histogram_invariants_enforced():
    with pytest.raises(ValueError):
        DecodedHistogram(target=3, bits=1, iterations=2, shots=10,
                         valid_fraction=0.5, exact_success=0.5,
                         entries={(1, 1, 1): 9})
    with pytest.raises(ValueError):
        DecodedHistogram(target=3, bits=1, iterations=2, shots=10,
                         valid_fraction=1.5, exact_success=0.5,
                         entries={(1, 1, 1): 10})


def test_json_wire_format():
    case = plan(3, 1)
    histogram = run(case, shots=64, seed=5)
    wire = to_json_dict(histogram)
    assert list(wire) == ["n_value", "bits", "iterations", "shots",
                          "valid_fraction", "exact_success", "counts"]
    assert wire["n_value"] == 3
    assert wire["bits"] == 1
    assert wire["iterations"] == case.iterations
    assert wire["shots"] == 64
    counts = wire["counts"]
    assert counts[0]["x"] == 1 and counts[0]["y"] == 1 and counts[0]["z"] == 1
    assert sum(entry["count"] for entry in counts) == 64
    # sorted by count descending, ties by ascending triplet
    for earlier, later in zip(counts, counts[1:]):
        key_e = (-earlier["count"], earlier["x"], earlier["y"], earlier["z"])
        key_l = (-later["count"], later["x"], later["y"], later["z"])
        assert key_e <= key_l


def test_run_shot_validation_propagates():
    with pytest.raises(ConstraintError):
        run(plan(3, 1), shots=0, seed=0)
