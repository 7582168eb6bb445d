"""Lookup-oracle synthesis for rectangle scenes.

Each selected rectangle parameter (left, right, bottom, top edge) is
split into output bits; each bit is a Boolean function of the primitive
index and becomes gates writing that bit into its parameter wire for
every index in superposition.

Two modes:

* ``naive``: each bit-function is realized from its raw minterm list,
  one product per on-set index with all index literals present. Multi-
  product functions compute every product into an ancilla and OR the
  ancillas into the parameter wire (X on the target, then an MCX with
  all-negative controls), then uncompute, so the pool is reusable.
* ``optimized``: each bit-function first goes through the exact
  minimizer. Covers that are pairwise disjoint skip the ancillas:
  their products XOR straight onto the parameter wire, which equals OR
  for disjoint products. Overlapping covers use the ancilla OR gadget.

Scenes with a single primitive get one index wire with the row
duplicated, which makes every bit-function constant; constants compile
to a bare X (or nothing) in both modes.

The index register is prepared in uniform superposition by one H per
wire; the gate count of that prologue is recorded in circuit metadata so
verification can skip it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import (
    Circuit,
    CircuitBuilder,
    Control,
    GateKind,
    QubitId,
    h,
    mcx,
    x,
)
from .errors import InconsistencyError, ValidationError
from .logic import Implicant, TruthTable
from .minimize import minimize
from .scene import PARAM_ORDER, PARAM_REGISTER, Scene, normalize_selector
from .sim import run

_REGISTER_PARAM = {reg: name for name, reg in PARAM_REGISTER.items()}

INDEX_REGISTER = "idx"
ANCILLA_REGISTER = "anc"


@dataclass(frozen=True)
class BitFunction:
    param: str
    bit: int
    table: TruthTable


@dataclass(frozen=True)
class BitFunctionSet:
    """Per-parameter, per-bit truth tables in emission order."""

    index_width: int
    functions: tuple[BitFunction, ...]

    def table(self, param: str, bit: int) -> TruthTable:
        for f in self.functions:
            if f.param == param and f.bit == bit:
                return f.table
        raise KeyError((param, bit))


def derive_bit_functions(scene: Scene, selector=None) -> BitFunctionSet:
    """On-sets read straight off the primitive parameters, bit by bit."""
    chosen = normalize_selector(selector)
    width = scene.index_width
    rows = scene.rects if scene.num_primitives > 1 else scene.rects * 2
    functions = []
    for param in chosen:
        for bit in range(scene.param_width(param)):
            on = frozenset(i for i, r in enumerate(rows) if r.param(param) >> bit & 1)
            functions.append(BitFunction(param, bit, TruthTable(width, on)))
    return BitFunctionSet(width, functions)


@dataclass(frozen=True)
class OracleLayout:
    """Wire map of a synthesized oracle: index, parameters, ancillas.

    Wire 0 is the least significant index bit; parameter registers
    follow in canonical order, ancillas last.
    """

    index_width: int
    param_widths: tuple[tuple[str, int], ...]
    ancilla_width: int

    @property
    def selector(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.param_widths)

    @property
    def data_width(self) -> int:
        return self.index_width + sum(w for _, w in self.param_widths)

    @property
    def num_wires(self) -> int:
        return self.data_width + self.ancilla_width

    @classmethod
    def for_scene(cls, scene: Scene, selector=None, ancilla_width: int = 0) -> "OracleLayout":
        chosen = normalize_selector(selector)
        widths = tuple((p, scene.param_width(p)) for p in chosen)
        return cls(scene.index_width, widths, ancilla_width)

    @classmethod
    def from_circuit(cls, c: Circuit) -> "OracleLayout":
        index_width = None
        params = []
        ancilla = 0
        for name, width in c.registers:
            if name == INDEX_REGISTER:
                index_width = width
            elif name in _REGISTER_PARAM:
                params.append((_REGISTER_PARAM[name], width))
            else:
                ancilla += width
        if index_width is None:
            raise ValidationError("circuit has no index register")
        return cls(index_width, tuple(params), ancilla)

    def decode(self, basis_index: int) -> tuple[int, dict[str, int], int]:
        """Split a basis index into (index value, parameter values, ancilla bits)."""
        index = basis_index & ((1 << self.index_width) - 1)
        shift = self.index_width
        values = {}
        for name, width in self.param_widths:
            values[name] = (basis_index >> shift) & ((1 << width) - 1)
            shift += width
        return index, values, basis_index >> shift

    def label(self, basis_index: int) -> str:
        """Histogram bin label ``index : (values...)``; ancillas must be 0."""
        index, values, anc = self.decode(basis_index)
        if anc:
            raise InconsistencyError(
                f"basis state {basis_index} has nonzero ancilla bits {anc:b}"
            )
        ordered = [values[name] for name in self.selector]
        if len(ordered) == 1:
            return f"{index} : {ordered[0]}"
        return f"{index} : ({','.join(str(v) for v in ordered)})"


@dataclass(frozen=True)
class _Plan:
    param: str
    bit: int
    constant_true: bool
    products: tuple[Implicant, ...]
    use_or: bool


def _pairwise_disjoint(terms: tuple[Implicant, ...]) -> bool:
    for i, a in enumerate(terms):
        for b in terms[i + 1 :]:
            common = a.care_mask & b.care_mask
            if (a.pattern ^ b.pattern) & common == 0:
                return False
    return True


def _plan_function(f: BitFunction, mode: str, single_primitive: bool) -> _Plan:
    table = f.table
    if single_primitive or table.is_constant_false:
        return _Plan(f.param, f.bit, table.is_constant_true, (), False)
    if mode == "optimized":
        terms = minimize(table).cover.terms
        if len(terms) == 1 and terms[0].literal_count == 0:
            return _Plan(f.param, f.bit, True, (), False)
        if len(terms) <= 1 or _pairwise_disjoint(terms):
            return _Plan(f.param, f.bit, False, terms, False)
        return _Plan(f.param, f.bit, False, terms, True)
    minterms = tuple(Implicant.minterm(table.arity, i) for i in sorted(table.on_set))
    if len(minterms) == 1:
        return _Plan(f.param, f.bit, False, minterms, False)
    return _Plan(f.param, f.bit, False, minterms, True)


def _term_controls(term: Implicant, index_wires: list[QubitId]) -> list[Control]:
    controls = []
    for i in range(term.arity):
        bit = 1 << i
        if term.care_mask & bit:
            controls.append(Control(index_wires[i], positive=bool(term.pattern & bit)))
    return controls


def synthesize(
    scene: Scene,
    mode: str,
    selector=None,
    include_index_prep: bool = True,
) -> Circuit:
    """Build the lookup oracle for ``scene`` in ``mode``.

    ``selector`` restricts which parameters are synthesized (default all
    four); ``include_index_prep`` controls the H prologue on the index
    register.
    """
    if mode not in ("naive", "optimized"):
        raise ValueError(f"mode must be 'naive' or 'optimized', got {mode!r}")
    chosen = normalize_selector(selector)
    functions = derive_bit_functions(scene, chosen)
    single = scene.num_primitives == 1
    plans = [_plan_function(f, mode, single) for f in functions.functions]
    pool = max((len(p.products) for p in plans if p.use_or), default=0)

    registers = [(INDEX_REGISTER, scene.index_width)]
    registers += [(PARAM_REGISTER[p], scene.param_width(p)) for p in chosen]
    if pool:
        registers.append((ANCILLA_REGISTER, pool))
    builder = CircuitBuilder(registers)

    index_wires = [QubitId(INDEX_REGISTER, i) for i in range(scene.index_width)]
    prologue = 0
    if include_index_prep:
        for q in index_wires:
            builder.append(h(q))
        prologue = len(index_wires)

    for plan in plans:
        target = QubitId(PARAM_REGISTER[plan.param], plan.bit)
        if plan.constant_true:
            builder.append(x(target))
            continue
        if not plan.use_or:
            for term in plan.products:
                controls = _term_controls(term, index_wires)
                if controls:
                    builder.append(mcx(controls, target))
                else:
                    builder.append(x(target))
            continue
        scratch = [QubitId(ANCILLA_REGISTER, j) for j in range(len(plan.products))]
        for term, anc in zip(plan.products, scratch):
            builder.append(mcx(_term_controls(term, index_wires), anc))
        builder.append(x(target))
        builder.append(mcx([Control(q, positive=False) for q in scratch], target))
        for term, anc in zip(reversed(plan.products), reversed(scratch)):
            builder.append(mcx(_term_controls(term, index_wires), anc))

    return builder.build(
        {
            "scene": scene.content_hash(),
            "bounds": f"{scene.bounds_x}x{scene.bounds_y}",
            "primitives": str(scene.num_primitives),
            "mode": mode,
            "params": ",".join(chosen),
            "prologue_len": str(prologue),
            "basis": "logical",
        }
    )


@dataclass(frozen=True)
class IndexCheck:
    index: int
    expected: tuple[int, ...]
    actual: tuple[int, ...]
    ancilla_clean: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.actual and self.ancilla_clean


@dataclass(frozen=True)
class OracleReport:
    selector: tuple[str, ...]
    checks: tuple[IndexCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def ancillas_clean(self) -> bool:
        return all(c.ancilla_clean for c in self.checks)

    def failing_indices(self) -> tuple[int, ...]:
        return tuple(c.index for c in self.checks if not c.ok)


def _classical_body(c: Circuit) -> bool:
    prologue = int(c.metadata.get("prologue_len", "0"))
    return all(g.kind in (GateKind.X, GateKind.MCX) for g in c.gates[prologue:])


def _propagate_classical(c: Circuit, start: int) -> int:
    prologue = int(c.metadata.get("prologue_len", "0"))
    bits = start
    for g in c.gates[prologue:]:
        t = 1 << c.wire_index(g.target)
        if g.kind is GateKind.X:
            bits ^= t
        else:
            hit = all(
                bool(bits >> c.wire_index(ctl.qubit) & 1) == ctl.positive
                for ctl in g.controls
            )
            if hit:
                bits ^= t
    return bits


def _propagate_simulated(c: Circuit, start: int) -> int:
    prologue = int(c.metadata.get("prologue_len", "0"))
    body = Circuit(c.registers, c.gates[prologue:], {})
    sv = run(body, initial=start)
    support = np.flatnonzero(np.abs(sv.amplitudes) > 0.5)
    if len(support) != 1:
        raise InconsistencyError(
            "circuit body is not a basis-state permutation; cannot verify classically"
        )
    return int(support[0])


def verify_oracle(c: Circuit, scene: Scene, selector=None) -> OracleReport:
    """Check the circuit's classical map against the scene, index by index.

    The H prologue recorded in metadata is skipped. Bodies made of X and
    MCX gates propagate classically; lowered bodies run through the
    simulator per index (they are still basis-state permutations).
    """
    layout = OracleLayout.from_circuit(c)
    chosen = normalize_selector(selector) if selector is not None else layout.selector
    for name in chosen:
        if name not in layout.selector:
            raise ValidationError(f"circuit does not synthesize parameter {name!r}")
    classical = _classical_body(c)
    checks = []
    for i in range(scene.num_primitives):
        final = _propagate_classical(c, i) if classical else _propagate_simulated(c, i)
        _, values, anc_bits = layout.decode(final)
        expected = tuple(scene.rects[i].param(name) for name in chosen)
        actual = tuple(values[name] for name in chosen)
        checks.append(IndexCheck(i, expected, actual, anc_bits == 0))
    return OracleReport(chosen, tuple(checks))


def classical_map(c: Circuit, scene: Scene, selector=None) -> dict[int, tuple[int, ...]]:
    """Index -> parameter tuple as the circuit actually computes it."""
    report = verify_oracle(c, scene, selector)
    return {check.index: check.actual for check in report.checks}


def report_text(report: OracleReport) -> str:
    lines = [f"parameters: {','.join(report.selector)}"]
    for c in report.checks:
        flag = "ok" if c.ok else "MISMATCH"
        lines.append(
            f"index {c.index}: expected {c.expected} actual {c.actual} "
            f"ancillas {'clean' if c.ancilla_clean else 'DIRTY'} [{flag}]"
        )
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
