import numpy as np
import pytest

from rayoracle.circuit import (
    CircuitBuilder,
    Control,
    GateBasis,
    GateKind,
    QubitId,
    ccx,
    cx,
    gate_count,
    h,
    mcx,
    x,
)
from rayoracle.errors import CapacityError
from rayoracle.lowering import LOWERING_REGISTER, fits_basis, lower
from rayoracle.sim import run


def build(gates, registers):
    b = CircuitBuilder(registers)
    b.extend(gates)
    return b.build()


def classical_image(c, start):
    """Where a permutation circuit sends one basis state."""
    sv = run(c, initial=start)
    support = np.flatnonzero(np.abs(sv.amplitudes) > 0.5)
    assert len(support) == 1, "not a permutation"
    return int(support[0])


def assert_same_permutation(logical, lowered, data_wires):
    """Lowered must act identically on shared wires and restore the rest.

    ``data_wires`` is the wire count of the original circuit; any extra
    lowered wires must start and end at zero.
    """
    for start in range(1 << data_wires):
        expect = classical_image(logical, start)
        got = classical_image(lowered, start)
        assert got == expect, f"input {start}: {got} != {expect}"


def assert_same_state(logical, lowered, initial=0, atol=1e-9):
    """Full statevector agreement up to one global phase."""
    a = run(logical, initial=initial).amplitudes
    b = run(lowered, initial=initial).amplitudes
    if len(b) > len(a):
        assert np.allclose(b[len(a):], 0.0, atol=atol)
        b = b[: len(a)]
    pivot = int(np.argmax(np.abs(a)))
    assert abs(b[pivot]) > 1e-12
    phase = a[pivot] / b[pivot]
    assert abs(abs(phase) - 1.0) < 1e-9
    assert np.allclose(a, phase * b, atol=atol)


def controls(qubits, polarity=None):
    if polarity is None:
        polarity = [True] * len(qubits)
    return [Control(q, positive=p) for q, p in zip(qubits, polarity)]


def test_wide_mcx_with_borrowed_dirty_wire():
    regs = (("c", 3), ("t", 1), ("d", 1))
    cq = [QubitId("c", i) for i in range(3)]
    logical = build([mcx(controls(cq), QubitId("t", 0))], regs)
    lowered = lower(logical, GateBasis.TOFFOLI)
    assert lowered.registers == regs  # borrowed, nothing fresh
    assert all(g.kind in (GateKind.X, GateKind.MCX) for g in lowered.gates)
    assert all(len(g.controls) <= 2 for g in lowered.gates)
    assert_same_permutation(logical, lowered, 5)


def test_wide_mcx_with_two_borrowed_wires():
    regs = (("c", 4), ("t", 1), ("d", 2))
    cq = [QubitId("c", i) for i in range(4)]
    logical = build([mcx(controls(cq), QubitId("t", 0))], regs)
    lowered = lower(logical, GateBasis.TOFFOLI)
    assert lowered.registers == regs
    assert_same_permutation(logical, lowered, 7)


def test_wide_mcx_needs_fresh_wires_when_narrow():
    regs = (("c", 5), ("t", 1))
    cq = [QubitId("c", i) for i in range(5)]
    logical = build([mcx(controls(cq), QubitId("t", 0))], regs)
    lowered = lower(logical, GateBasis.TOFFOLI)
    names = [name for name, _ in lowered.registers]
    assert names == ["c", "t", LOWERING_REGISTER]
    assert lowered.register_width(LOWERING_REGISTER) == 3
    assert_same_permutation(logical, lowered, 6)


def test_narrow_mcx_without_new_wires_is_a_capacity_error():
    regs = (("c", 5), ("t", 1))
    cq = [QubitId("c", i) for i in range(5)]
    logical = build([mcx(controls(cq), QubitId("t", 0))], regs)
    with pytest.raises(CapacityError):
        lower(logical, GateBasis.TOFFOLI, allow_new_wires=False)


def test_negative_controls_become_x_sandwich():
    regs = (("c", 2), ("t", 1))
    gate = mcx(
        controls([QubitId("c", 0), QubitId("c", 1)], [False, True]),
        QubitId("t", 0),
    )
    logical = build([gate], regs)
    lowered = lower(logical, GateBasis.TOFFOLI)
    assert all(
        all(ctl.positive for ctl in g.controls) for g in lowered.gates
    )
    assert_same_permutation(logical, lowered, 3)


def test_negative_controls_on_wide_gate():
    regs = (("c", 3), ("t", 1), ("d", 1))
    cq = [QubitId("c", i) for i in range(3)]
    gate = mcx(controls(cq, [False, False, True]), QubitId("t", 0))
    logical = build([gate], regs)
    lowered = lower(logical, GateBasis.TOFFOLI)
    assert_same_permutation(logical, lowered, 5)


def test_zero_control_mcx_lowers_to_x():
    regs = (("t", 1),)
    logical = build([mcx([], QubitId("t", 0))], regs)
    lowered = lower(logical, GateBasis.TOFFOLI)
    assert [g.kind for g in lowered.gates] == [GateKind.X]


def test_cx_to_elementary():
    regs = (("a", 2),)
    logical = build([cx(QubitId("a", 0), QubitId("a", 1))], regs)
    lowered = lower(logical, GateBasis.ELEMENTARY)
    assert fits_basis(lowered, GateBasis.ELEMENTARY)
    for start in range(4):
        assert_same_state(logical, lowered, initial=start)


def test_ccx_to_elementary():
    regs = (("a", 3),)
    logical = build(
        [ccx(QubitId("a", 0), QubitId("a", 1), QubitId("a", 2))], regs
    )
    lowered = lower(logical, GateBasis.ELEMENTARY)
    for start in range(8):
        assert_same_state(logical, lowered, initial=start)


def test_h_to_elementary():
    regs = (("a", 1),)
    logical = build([h(QubitId("a", 0))], regs)
    lowered = lower(logical, GateBasis.ELEMENTARY)
    for start in range(2):
        assert_same_state(logical, lowered, initial=start)


def test_composite_circuit_to_elementary():
    regs = (("a", 3), ("t", 1))
    aq = [QubitId("a", i) for i in range(3)]
    gates = [
        h(aq[0]),
        h(aq[1]),
        x(aq[2]),
        mcx(controls(aq, [True, False, True]), QubitId("t", 0)),
        cx(aq[0], aq[1]),
    ]
    logical = build(gates, regs)
    lowered = lower(logical, GateBasis.ELEMENTARY)
    assert fits_basis(lowered, GateBasis.ELEMENTARY)
    assert_same_state(logical, lowered)


def test_lowering_is_idempotent():
    regs = (("c", 3), ("t", 1), ("d", 1))
    cq = [QubitId("c", i) for i in range(3)]
    logical = build([mcx(controls(cq), QubitId("t", 0))], regs)
    once = lower(logical, GateBasis.TOFFOLI)
    twice = lower(once, GateBasis.TOFFOLI)
    assert twice.gates == once.gates
    assert twice.registers == once.registers


def test_cannot_raise_to_a_larger_basis():
    regs = (("a", 2),)
    elementary = lower(
        build([cx(QubitId("a", 0), QubitId("a", 1))], regs), GateBasis.ELEMENTARY
    )
    with pytest.raises(ValueError):
        lower(elementary, GateBasis.TOFFOLI)
    with pytest.raises(ValueError):
        lower(elementary, GateBasis.LOGICAL)


def test_toffoli_circuit_already_fits_logical():
    regs = (("a", 3),)
    c = build([ccx(QubitId("a", 0), QubitId("a", 1), QubitId("a", 2))], regs)
    assert lower(c, GateBasis.LOGICAL).gates == c.gates


def test_lowering_preserves_prologue_metadata():
    regs = (("a", 2), ("t", 1))
    b = CircuitBuilder(regs)
    b.append(h(QubitId("a", 0)))
    b.append(h(QubitId("a", 1)))
    b.append(mcx(controls([QubitId("a", 0), QubitId("a", 1)]), QubitId("t", 0)))
    c = b.build({"prologue_len": "2"})
    lowered = lower(c, GateBasis.ELEMENTARY)
    assert lowered.metadata["basis"] == "elementary"
    plen = int(lowered.metadata["prologue_len"])
    assert all(g.kind in (GateKind.RZ, GateKind.SX) for g in lowered.gates[:plen])


def test_dirty_ladder_cost_scales_linearly():
    # 4(k-2) CCX per wide gate once borrowed wires exist.
    for k in (3, 4, 5):
        regs = (("c", k), ("t", 1), ("d", k))
        cq = [QubitId("c", i) for i in range(k)]
        logical = build([mcx(controls(cq), QubitId("t", 0))], regs)
        lowered = lower(logical, GateBasis.TOFFOLI)
        assert gate_count(lowered) == 4 * (k - 2)
