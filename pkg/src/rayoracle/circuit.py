"""Gate-level circuit IR with named registers and simple metrics.

Wires are addressed as (register, offset) pairs; the flat wire index
enumerates registers in declaration order with offset 0 first, and wire 0
is the least significant bit of a basis-state integer. Gates carry their
controls explicitly, each with a polarity, so a control-on-zero is part of
the gate rather than a surrounding pair of X gates (those appear only
after lowering).

Circuits are immutable once built. Use ``CircuitBuilder`` or construct
``Circuit`` directly from tuples.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping


class GateKind(str, enum.Enum):
    X = "x"
    H = "h"
    MCX = "mcx"
    CZ = "cz"
    RZ = "rz"
    SX = "sx"


class GateBasis(str, enum.Enum):
    """Target gate sets, most abstract first.

    logical: X, H, and MCX with any control count and polarity.
    toffoli: X, H, CX, CCX with positive controls only.
    elementary: CZ, Rz, SX, X (identity never emitted).
    """

    LOGICAL = "logical"
    TOFFOLI = "toffoli"
    ELEMENTARY = "elementary"


@dataclass(frozen=True, order=True)
class QubitId:
    register: str
    offset: int


@dataclass(frozen=True)
class Control:
    qubit: QubitId
    positive: bool = True


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    target: QubitId
    controls: tuple[Control, ...] = ()
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind in (GateKind.X, GateKind.H, GateKind.RZ, GateKind.SX) and self.controls:
            raise ValueError(f"{self.kind.value} takes no controls")
        if self.kind is GateKind.CZ and len(self.controls) != 1:
            raise ValueError("cz takes exactly one control")
        if self.kind is GateKind.RZ and self.angle is None:
            raise ValueError("rz needs an angle")
        if self.kind is not GateKind.RZ and self.angle is not None:
            raise ValueError(f"{self.kind.value} takes no angle")
        wires = [c.qubit for c in self.controls] + [self.target]
        if len(set(wires)) != len(wires):
            raise ValueError("gate wires must be distinct")

    @property
    def qubits(self) -> tuple[QubitId, ...]:
        return tuple(c.qubit for c in self.controls) + (self.target,)


def x(q: QubitId) -> Gate:
    return Gate(GateKind.X, q)


def h(q: QubitId) -> Gate:
    return Gate(GateKind.H, q)


def mcx(controls: Iterable[Control], target: QubitId) -> Gate:
    return Gate(GateKind.MCX, target, tuple(controls))


def cx(control: QubitId, target: QubitId) -> Gate:
    return Gate(GateKind.MCX, target, (Control(control),))


def ccx(c1: QubitId, c2: QubitId, target: QubitId) -> Gate:
    return Gate(GateKind.MCX, target, (Control(c1), Control(c2)))


def cz(control: QubitId, target: QubitId) -> Gate:
    return Gate(GateKind.CZ, target, (Control(control),))


def rz(angle: float, target: QubitId) -> Gate:
    return Gate(GateKind.RZ, target, angle=angle)


def sx(target: QubitId) -> Gate:
    return Gate(GateKind.SX, target)


@dataclass(frozen=True)
class Circuit:
    registers: tuple[tuple[str, int], ...]
    gates: tuple[Gate, ...]
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        names = [name for name, _ in self.registers]
        if len(set(names)) != len(names):
            raise ValueError("duplicate register name")
        for name, width in self.registers:
            if width < 1:
                raise ValueError(f"register {name!r} has width {width}")
        for g in self.gates:
            for q in g.qubits:
                self.wire_index(q)

    @property
    def num_wires(self) -> int:
        return sum(w for _, w in self.registers)

    def register_width(self, name: str) -> int:
        for rname, width in self.registers:
            if rname == name:
                return width
        raise KeyError(name)

    def wire_index(self, q: QubitId) -> int:
        base = 0
        for name, width in self.registers:
            if name == q.register:
                if not 0 <= q.offset < width:
                    raise ValueError(f"offset {q.offset} outside register {name!r}[{width}]")
                return base + q.offset
            base += width
        raise ValueError(f"unknown register {q.register!r}")

    def qubit_at(self, wire: int) -> QubitId:
        base = 0
        for name, width in self.registers:
            if wire < base + width:
                return QubitId(name, wire - base)
            base += width
        raise ValueError(f"wire {wire} outside circuit of {self.num_wires} wires")

    def with_metadata(self, **updates: str) -> "Circuit":
        merged = dict(self.metadata)
        merged.update(updates)
        return replace(self, metadata=merged)


class CircuitBuilder:
    """Mutable gate accumulator; ``build()`` freezes into a Circuit."""

    def __init__(self, registers: Iterable[tuple[str, int]]):
        self.registers = tuple(registers)
        self.gates: list[Gate] = []

    def append(self, gate: Gate) -> None:
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        self.gates.extend(gates)

    def build(self, metadata: Mapping[str, str] | None = None) -> Circuit:
        return Circuit(self.registers, tuple(self.gates), dict(metadata or {}))


def touched_wires(c: Circuit) -> set[int]:
    wires: set[int] = set()
    for g in c.gates:
        for q in g.qubits:
            wires.add(c.wire_index(q))
    return wires


def gate_count(c: Circuit) -> int:
    return len(c.gates)


def qubit_count(c: Circuit) -> int:
    """Wires the circuit actually uses; declared-but-idle slots don't count."""
    return len(touched_wires(c))


def depth(c: Circuit) -> int:
    """Greedy layering: every gate occupies one layer on all its wires."""
    busy: dict[int, int] = {}
    longest = 0
    for g in c.gates:
        wires = [c.wire_index(q) for q in g.qubits]
        layer = 1 + max((busy.get(w, 0) for w in wires), default=0)
        for w in wires:
            busy[w] = layer
        longest = max(longest, layer)
    return longest


def concatenate(a: Circuit, b: Circuit) -> Circuit:
    """Join two circuits over identical register declarations."""
    if a.registers != b.registers:
        raise ValueError("register layouts differ")
    return Circuit(a.registers, a.gates + b.gates, dict(a.metadata))


def circuit_basis(c: Circuit) -> GateBasis | None:
    """The tightest declared basis the circuit's gates all fit, if any."""
    kinds = {g.kind for g in c.gates}
    if kinds <= {GateKind.CZ, GateKind.RZ, GateKind.SX, GateKind.X}:
        if not any(g.kind is GateKind.CZ and not g.controls[0].positive for g in c.gates):
            return GateBasis.ELEMENTARY
    if kinds <= {GateKind.X, GateKind.H, GateKind.MCX}:
        toffoli_ok = all(
            g.kind is not GateKind.MCX
            or (len(g.controls) <= 2 and all(ctl.positive for ctl in g.controls))
            for g in c.gates
        )
        if toffoli_ok:
            return GateBasis.TOFFOLI
        return GateBasis.LOGICAL
    return None
