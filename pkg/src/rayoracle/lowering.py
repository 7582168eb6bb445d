"""Basis lowering passes.

The rewrite chain, bottom of each arrow verified by simulation in the
test suite:

* negative control -> X sandwich on that control wire
* MCX, k >= 3 controls -> CCX ladder over k-2 helper wires. Helpers are
  borrowed from the lowest-indexed wires outside the gate's support and
  may hold arbitrary values, so the ladder is the 4(k-2)-CCX construction
  that restores them regardless of initial state. Only when the circuit
  is too narrow to borrow are fresh wires declared; those are genuinely
  clean, and get the cheaper (k-2) compute/uncompute CCX pairs around one
  central CCX.
* CCX -> the standard 6-CX network with H and Rz(+-pi/4) singles
* CX -> H . CZ . H on the target wire
* H -> Rz(pi/2) . SX . Rz(pi/2), up to global phase

Global phase is outside the semantic contract; every identity above
preserves basis-state behavior exactly.
"""

from __future__ import annotations

import math

from .circuit import (
    Circuit,
    Control,
    Gate,
    GateBasis,
    GateKind,
    QubitId,
    ccx,
    cx,
    cz,
    h,
    rz,
    sx,
    x,
)
from .errors import CapacityError

LOWERING_REGISTER = "lowanc"

_QUARTER = math.pi / 4
_HALF = math.pi / 2


def _sandwich_negatives(gate: Gate) -> tuple[list[Gate], Gate]:
    """Split off X gates realizing negative controls; returns (xs, positive gate)."""
    xs = [x(c.qubit) for c in gate.controls if not c.positive]
    positive = Gate(
        gate.kind,
        gate.target,
        tuple(Control(c.qubit) for c in gate.controls),
        gate.angle,
    )
    return xs, positive


def _dirty_ladder(controls: list[QubitId], helpers: list[QubitId], target: QubitId) -> list[Gate]:
    """MCX via CCX over helpers of arbitrary value; helpers are restored."""
    k = len(controls)
    m = k - 2
    assert len(helpers) == m and m >= 1
    top = ccx(controls[k - 1], helpers[m - 1], target)
    mids = [ccx(controls[k - 2 - j], helpers[m - 2 - j], helpers[m - 1 - j]) for j in range(m - 1)]
    bottom = ccx(controls[0], controls[1], helpers[0])
    half = [top] + mids + [bottom] + mids[::-1]
    return half + half


def _clean_chain(controls: list[QubitId], helpers: list[QubitId], target: QubitId) -> list[Gate]:
    """MCX via CCX over helpers known to be |0>; computes, hits target, uncomputes."""
    k = len(controls)
    m = k - 2
    assert len(helpers) == m and m >= 1
    up = [ccx(controls[0], controls[1], helpers[0])]
    up += [ccx(controls[j + 1], helpers[j - 1], helpers[j]) for j in range(1, m)]
    center = ccx(controls[k - 1], helpers[m - 1], target)
    return up + [center] + up[::-1]


def _plan_fresh_wires(c: Circuit, allow_new_wires: bool) -> int:
    """How many fresh helper wires the whole pass needs (max shortfall)."""
    fresh = 0
    for g in c.gates:
        if g.kind is not GateKind.MCX or len(g.controls) < 3:
            continue
        need = len(g.controls) - 2
        borrowable = c.num_wires - (len(g.controls) + 1)
        short = need - borrowable
        if short > fresh:
            fresh = short
    if fresh and not allow_new_wires:
        raise CapacityError(
            f"lowering needs {fresh} more helper wire(s) than the circuit can lend"
        )
    return fresh


def _expand_mcx(c: Circuit, gate: Gate) -> list[Gate]:
    """Positive-control MCX with k >= 3 into CCX gates."""
    controls = [ctl.qubit for ctl in gate.controls]
    need = len(controls) - 2
    support = {c.wire_index(q) for q in controls} | {c.wire_index(gate.target)}
    pool = [w for w in range(c.num_wires) if w not in support]
    helpers = [c.qubit_at(w) for w in pool[:need]]
    if len(helpers) < need:
        raise CapacityError(
            f"lowering a {len(controls)}-control gate needs {need} helpers, "
            f"only {len(helpers)} wires available"
        )
    borrowed = any(q.register != LOWERING_REGISTER for q in helpers)
    if borrowed:
        return _dirty_ladder(controls, helpers, gate.target)
    return _clean_chain(controls, helpers, gate.target)


def _toffoli_gate(c: Circuit, gate: Gate) -> list[Gate]:
    if gate.kind in (GateKind.X, GateKind.H):
        return [gate]
    if gate.kind is not GateKind.MCX:
        raise ValueError(f"cannot raise {gate.kind.value} gate into the toffoli basis")
    xs, positive = _sandwich_negatives(gate)
    k = len(positive.controls)
    if k == 0:
        inner = [x(positive.target)]
    elif k <= 2:
        inner = [positive]
    else:
        inner = _expand_mcx(c, positive)
    return xs + inner + xs


def _ccx_elementary(a: QubitId, b: QubitId, t: QubitId) -> list[Gate]:
    return [
        h(t), cx(b, t), rz(-_QUARTER, t), cx(a, t), rz(_QUARTER, t),
        cx(b, t), rz(-_QUARTER, t), cx(a, t), rz(_QUARTER, b), rz(_QUARTER, t),
        h(t), cx(a, b), rz(_QUARTER, a), rz(-_QUARTER, b), cx(a, b),
    ]


def _elementary_gate(gate: Gate) -> list[Gate]:
    if gate.kind in (GateKind.X, GateKind.CZ, GateKind.RZ, GateKind.SX):
        return [gate]
    if gate.kind is GateKind.H:
        t = gate.target
        return [rz(_HALF, t), sx(t), rz(_HALF, t)]
    assert gate.kind is GateKind.MCX and len(gate.controls) <= 2
    if len(gate.controls) == 0:
        return [x(gate.target)]
    if len(gate.controls) == 1:
        c, t = gate.controls[0].qubit, gate.target
        out = []
        out += _elementary_gate(h(t))
        out.append(cz(c, t))
        out += _elementary_gate(h(t))
        return out
    a, b, t = gate.controls[0].qubit, gate.controls[1].qubit, gate.target
    out = []
    for g in _ccx_elementary(a, b, t):
        if g.kind is GateKind.MCX or g.kind is GateKind.H:
            out += _elementary_gate(g)
        else:
            out.append(g)
    return out


def _rewrite(c: Circuit, target_basis: GateBasis, allow_new_wires: bool) -> Circuit:
    fresh = _plan_fresh_wires(c, allow_new_wires) if target_basis is not GateBasis.LOGICAL else 0
    registers = c.registers
    if fresh:
        registers = registers + ((LOWERING_REGISTER, fresh),)
    widened = Circuit(registers, c.gates, dict(c.metadata))

    prologue = int(c.metadata.get("prologue_len", "0"))
    out: list[Gate] = []
    new_prologue = 0
    for pos, gate in enumerate(widened.gates):
        expanded = _toffoli_gate(widened, gate)
        if target_basis is GateBasis.ELEMENTARY:
            flat: list[Gate] = []
            for g in expanded:
                flat += _elementary_gate(g)
            expanded = flat
        out.extend(expanded)
        if pos < prologue:
            new_prologue = len(out)
    meta = dict(c.metadata)
    meta["basis"] = target_basis.value
    if "prologue_len" in meta:
        meta["prologue_len"] = str(new_prologue)
    return Circuit(registers, tuple(out), meta)


def _gate_fits(g: Gate, basis: GateBasis) -> bool:
    if basis is GateBasis.LOGICAL:
        return g.kind in (GateKind.X, GateKind.H, GateKind.MCX)
    if basis is GateBasis.TOFFOLI:
        if g.kind in (GateKind.X, GateKind.H):
            return True
        return (
            g.kind is GateKind.MCX
            and 1 <= len(g.controls) <= 2
            and all(ctl.positive for ctl in g.controls)
        )
    return g.kind in (GateKind.X, GateKind.RZ, GateKind.SX) or (
        g.kind is GateKind.CZ and g.controls[0].positive
    )


def fits_basis(c: Circuit, basis: GateBasis) -> bool:
    return all(_gate_fits(g, basis) for g in c.gates)


def lower(c: Circuit, basis: GateBasis, allow_new_wires: bool = True) -> Circuit:
    """Rewrite ``c`` into ``basis``; idempotent when already there.

    Raises CapacityError when helpers are needed, the circuit cannot lend
    them, and ``allow_new_wires`` is False. Raises ValueError when asked
    to raise a circuit back up to a more abstract basis.
    """
    if fits_basis(c, basis):
        if c.metadata.get("basis") != basis.value:
            return c.with_metadata(basis=basis.value)
        return c
    if basis is GateBasis.LOGICAL or not fits_basis(c, GateBasis.LOGICAL):
        raise ValueError(f"circuit cannot be lowered to the {basis.value} basis from below")
    return _rewrite(c, basis, allow_new_wires)
