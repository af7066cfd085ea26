"""Gate-level circuit representation and metrics.

The gate set is exactly what the obfuscation pipeline needs: H, X, Z,
CX, CCX and MCX (3+ controls). Every gate in the set is self-inverse,
so inverting a circuit is reversing its op list.

Circuits are treated as immutable once built; builders append, everyone
else reads. The textual format (serialize/parse) is line oriented:
a ``width`` header, optional ``label <name> <i...>`` lines, then one
lowercase op per line with controls listed before the target. ``#``
starts a comment.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import CircuitParseError

GATE_KINDS = ("h", "x", "z", "cx", "ccx", "mcx")

# controls required per kind; mcx is checked as >= 3
_ARITY = {"h": 0, "x": 0, "z": 0, "cx": 1, "ccx": 2}


@dataclass(frozen=True)
class GateOp:
    """One gate application. Controls are kept sorted (canonical form)."""

    kind: str
    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "controls", tuple(sorted(self.controls)))
        want = _ARITY.get(self.kind)
        if want is not None and len(self.controls) != want:
            raise ValueError(
                f"{self.kind} takes {want} controls, got {len(self.controls)}"
            )
        if self.kind == "mcx" and len(self.controls) < 3:
            raise ValueError("mcx needs at least 3 controls; use cx/ccx below that")
        indices = self.qubits()
        if len(set(indices)) != len(indices):
            raise ValueError(f"gate indices must be distinct: {indices}")
        if any(q < 0 for q in indices):
            raise ValueError(f"gate indices must be non-negative: {indices}")

    def qubits(self) -> tuple[int, ...]:
        """All indices the gate touches, controls first."""
        return self.controls + (self.target,)


def h(target: int) -> GateOp:
    return GateOp("h", (), target)


def x(target: int) -> GateOp:
    return GateOp("x", (), target)


def z(target: int) -> GateOp:
    return GateOp("z", (), target)


def cx(control: int, target: int) -> GateOp:
    return GateOp("cx", (control,), target)


def ccx(control_a: int, control_b: int, target: int) -> GateOp:
    return GateOp("ccx", (control_a, control_b), target)


def mcx(controls, target: int) -> GateOp:
    """Multi-controlled X. One or two controls normalize to cx/ccx."""
    controls = tuple(controls)
    if len(controls) == 0:
        raise ValueError("mcx needs at least one control")
    if len(controls) == 1:
        return cx(controls[0], target)
    if len(controls) == 2:
        return ccx(controls[0], controls[1], target)
    return GateOp("mcx", controls, target)


@dataclass
class Circuit:
    """Ordered gate list over ``width`` qubits, with optional register labels."""

    width: int
    ops: list[GateOp] = field(default_factory=list)
    labels: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"circuit width must be >= 1, got {self.width}")
        for op in self.ops:
            self._check_op(op)
        self.labels = {name: tuple(idx) for name, idx in self.labels.items()}
        self._check_labels()

    def _check_op(self, op: GateOp):
        highest = max(op.qubits())
        if highest >= self.width:
            raise ValueError(
                f"gate {op.kind} touches qubit {highest}, circuit width {self.width}"
            )

    def _check_labels(self):
        seen: set[int] = set()
        for name, indices in self.labels.items():
            for q in indices:
                if not 0 <= q < self.width:
                    raise ValueError(f"label {name!r} index {q} out of range")
                if q in seen:
                    raise ValueError(f"label {name!r} overlaps another label at {q}")
                seen.add(q)

    def append(self, op: GateOp):
        self._check_op(op)
        self.ops.append(op)

    def extend(self, ops):
        for op in ops:
            self.append(op)

    def __len__(self):
        return len(self.ops)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """New circuit running ``a`` then ``b``. Widths must match.

    Labels come from ``a``; if ``a`` has none, ``b``'s are used.
    """
    if a.width != b.width:
        raise ValueError(f"compose width mismatch: {a.width} != {b.width}")
    labels = a.labels if a.labels else b.labels
    return Circuit(a.width, list(a.ops) + list(b.ops), dict(labels))


def inverse(circuit: Circuit) -> Circuit:
    """Reverse the op list. Valid because the whole gate set is self-inverse."""
    return Circuit(circuit.width, list(reversed(circuit.ops)), dict(circuit.labels))


def depth(circuit: Circuit) -> int:
    """Layer count under greedy as-soon-as-possible scheduling.

    Two gates conflict iff they share a qubit index; a gate lands on the
    layer after the deepest layer among its qubits.
    """
    level = [0] * circuit.width
    for op in circuit.ops:
        qs = op.qubits()
        layer = 1 + max(level[q] for q in qs)
        for q in qs:
            level[q] = layer
    return max(level, default=0) if circuit.width else 0


def gate_counts(circuit: Circuit) -> dict[str, int]:
    """Per-kind op counts plus a ``total`` entry."""
    counts = Counter(op.kind for op in circuit.ops)
    result = {kind: counts.get(kind, 0) for kind in GATE_KINDS}
    result["total"] = len(circuit.ops)
    return result


def _vchain(controls: tuple[int, ...], target: int, ancillas: list[int]) -> list[GateOp]:
    """Replace an MCX by 2k-3 CCX gates using k-2 clean ancillas.

    The forward chain folds controls into the ancillas, the middle CCX
    hits the target, and the mirrored chain restores every ancilla to 0.
    """
    k = len(controls)
    forward = [ccx(controls[0], controls[1], ancillas[0])]
    for i in range(1, k - 2):
        forward.append(ccx(controls[i + 1], ancillas[i - 1], ancillas[i]))
    middle = ccx(controls[k - 1], ancillas[k - 3], target)
    return forward + [middle] + list(reversed(forward))


def decompose_mcx(circuit: Circuit, ancillas=None) -> Circuit:
    """Rewrite every MCX into CCX gates via the clean-ancilla V-chain.

    ``ancillas`` names qubits known to be |0> whenever an MCX fires; they
    are restored to |0> by each chain. With ``ancillas=None`` fresh qubits
    are allocated past the current width instead (one shared pool, sized
    for the widest MCX). Emitted circuits use only {H, X, Z, CX, CCX}.
    """
    mcx_ops = [op for op in circuit.ops if op.kind == "mcx"]
    if not mcx_ops:
        return Circuit(circuit.width, list(circuit.ops), dict(circuit.labels))

    need = max(len(op.controls) for op in mcx_ops) - 2
    if ancillas is None:
        pool = list(range(circuit.width, circuit.width + need))
        new_width = circuit.width + need
    else:
        pool = list(ancillas)
        if len(set(pool)) != len(pool):
            raise ValueError("ancilla indices must be distinct")
        for q in pool:
            if not 0 <= q < circuit.width:
                raise ValueError(f"ancilla index {q} out of range")
        new_width = circuit.width

    out = Circuit(new_width, labels=dict(circuit.labels))
    for op in circuit.ops:
        if op.kind != "mcx":
            out.append(op)
            continue
        busy = set(op.qubits())
        usable = [q for q in pool if q not in busy]
        wanted = len(op.controls) - 2
        if len(usable) < wanted:
            raise ValueError(
                f"mcx with {len(op.controls)} controls needs {wanted} clean "
                f"ancillas, only {len(usable)} available"
            )
        out.extend(_vchain(op.controls, op.target, usable[:wanted]))
    return out


def serialize(circuit: Circuit) -> str:
    """Render the textual format. Little-endian indices, ASCII, \\n endings."""
    lines = [f"width {circuit.width}"]
    for name, indices in circuit.labels.items():
        lines.append("label " + name + " " + " ".join(str(q) for q in indices))
    for op in circuit.ops:
        lines.append(" ".join([op.kind, *map(str, op.qubits())]))
    return "\n".join(lines) + "\n"


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CircuitParseError("expected an integer", line_number, token) from None


def parse(text: str) -> Circuit:
    """Inverse of serialize: parse(serialize(c)) == c structurally."""
    width = None
    ops: list[GateOp] = []
    labels: dict[str, tuple[int, ...]] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head, rest = tokens[0], tokens[1:]
        if head == "width":
            if width is not None:
                raise CircuitParseError("duplicate width header", line_number)
            if len(rest) != 1:
                raise CircuitParseError("width takes one integer", line_number)
            width = _parse_int(rest[0], line_number)
            continue
        if width is None:
            raise CircuitParseError("width header must come first", line_number, head)
        if head == "label":
            if len(rest) < 2:
                raise CircuitParseError("label needs a name and indices", line_number)
            labels[rest[0]] = tuple(_parse_int(t, line_number) for t in rest[1:])
            continue
        if head not in GATE_KINDS:
            raise CircuitParseError("unknown op", line_number, head)
        indices = [_parse_int(t, line_number) for t in rest]
        if not indices:
            raise CircuitParseError("op needs a target index", line_number, head)
        try:
            op = GateOp(head, tuple(indices[:-1]), indices[-1])
        except ValueError as exc:
            raise CircuitParseError(str(exc), line_number, head) from None
        ops.append(op)
    if width is None:
        raise CircuitParseError("missing width header", 1)
    try:
        return Circuit(width, ops, labels)
    except ValueError as exc:
        raise CircuitParseError(str(exc), 1) from None
