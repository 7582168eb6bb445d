"""OpenQASM 2.0 emission for circuits in the logical or toffoli basis.

qelib1 has no general multi-controlled X and no control polarity, so the
toffoli lowering pass runs first: negative controls become X sandwiches
and wide MCX gates become CCX ladders. Emission is deterministic, one
gate per line, registers in declaration order.
"""

from __future__ import annotations

import re

from .circuit import Circuit, GateKind, QubitId
from .lowering import GateBasis, fits_basis, lower

_IDENT = re.compile(r"^[a-z][A-Za-z0-9_]*$")


def _ref(q: QubitId) -> str:
    return f"{q.register}[{q.offset}]"


def export_qasm(c: Circuit) -> str:
    """Serialize to OpenQASM 2.0 text (trailing newline included)."""
    if not fits_basis(c, GateBasis.LOGICAL):
        raise ValueError("only logical or toffoli basis circuits can be exported")
    lowered = lower(c, GateBasis.TOFFOLI)
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";']
    for name, width in lowered.registers:
        if not _IDENT.match(name):
            raise ValueError(f"register name {name!r} is not a valid OpenQASM identifier")
        lines.append(f"qreg {name}[{width}];")
    for g in lowered.gates:
        if g.kind is GateKind.X:
            lines.append(f"x {_ref(g.target)};")
        elif g.kind is GateKind.H:
            lines.append(f"h {_ref(g.target)};")
        else:
            assert g.kind is GateKind.MCX and len(g.controls) in (1, 2)
            ops = ",".join(_ref(ctl.qubit) for ctl in g.controls)
            mnemonic = "cx" if len(g.controls) == 1 else "ccx"
            lines.append(f"{mnemonic} {ops},{_ref(g.target)};")
    return "\n".join(lines) + "\n"
