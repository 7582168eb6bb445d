"""Statevector simulation, seeded sampling, and uniformity statistics.

The public surface is dense: ``run`` returns all 2^n amplitudes and caps
circuits at 24 wires. Internally gates act on a sparse list of
(basis index, amplitude) terms; the circuits this package builds keep
that list short (superposition enters only through the index-register
prologue and short single-qubit windows inside lowered Toffolis), which
is what makes wide lowered circuits simulable in seconds. The result is
bit-identical to sequential dense application.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .circuit import Circuit, GateKind
from .errors import CapacityError, InconsistencyError

MAX_WIRES = 24

_NORM_TOL = 1e-9
_PRUNE = 1e-12

_SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class Statevector:
    num_wires: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (1 << self.num_wires,):
            raise ValueError("amplitude count does not match wire count")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {norm} is not 1 within {_NORM_TOL}")


@dataclass
class Histogram:
    shots: int
    seed: int
    counts: dict[str, int]

    def __post_init__(self) -> None:
        total = sum(self.counts.values())
        if self.shots and total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")


def _mix_single(idx: np.ndarray, amp: np.ndarray, wire: int, matrix: np.ndarray):
    """Apply a 2x2 mixing matrix on one wire to the sparse term list."""
    bit = np.int64(1) << wire
    b = ((idx & bit) != 0).astype(np.int64)
    stay = matrix[b, b] * amp
    flip = matrix[1 - b, b] * amp
    all_idx = np.concatenate([idx, idx ^ bit])
    all_amp = np.concatenate([stay, flip])
    uniq, inverse = np.unique(all_idx, return_inverse=True)
    merged = np.zeros(len(uniq), dtype=complex)
    np.add.at(merged, inverse, all_amp)
    keep = np.abs(merged) > _PRUNE
    return uniq[keep], merged[keep]


def _apply_gate(c: Circuit, gate, idx: np.ndarray, amp: np.ndarray):
    t = c.wire_index(gate.target)
    tbit = np.int64(1) << t
    if gate.kind is GateKind.X:
        return idx ^ tbit, amp
    if gate.kind is GateKind.MCX:
        cmask = np.int64(0)
        cval = np.int64(0)
        for ctl in gate.controls:
            b = np.int64(1) << c.wire_index(ctl.qubit)
            cmask |= b
            if ctl.positive:
                cval |= b
        sat = (idx & cmask) == cval
        out = idx.copy()
        out[sat] ^= tbit
        return out, amp
    if gate.kind is GateKind.CZ:
        ctl = gate.controls[0]
        cbit = np.int64(1) << c.wire_index(ctl.qubit)
        csat = ((idx & cbit) != 0) == ctl.positive
        hit = csat & ((idx & tbit) != 0)
        out = amp.copy()
        out[hit] = -out[hit]
        return idx, out
    if gate.kind is GateKind.RZ:
        half = gate.angle / 2.0
        phase = np.where((idx & tbit) != 0, np.exp(1j * half), np.exp(-1j * half))
        return idx, amp * phase
    if gate.kind is GateKind.SX:
        return _mix_single(idx, amp, t, _SX)
    if gate.kind is GateKind.H:
        return _mix_single(idx, amp, t, _H)
    raise ValueError(f"unsupported gate kind {gate.kind}")


def run(c: Circuit, initial: int = 0) -> Statevector:
    """Apply the circuit to a basis state (default all-zero).

    Raises CapacityError beyond 24 wires and InconsistencyError if any
    gate application drifts the norm beyond 1e-9.
    """
    n = c.num_wires
    if n > MAX_WIRES:
        raise CapacityError(f"{n} wires exceeds the {MAX_WIRES}-wire simulation cap")
    if not 0 <= initial < (1 << n):
        raise ValueError(f"initial basis index {initial} outside [0, 2^{n})")
    idx = np.array([initial], dtype=np.int64)
    amp = np.array([1.0 + 0j], dtype=complex)
    for gate in c.gates:
        idx, amp = _apply_gate(c, gate, idx, amp)
        norm = float(np.sum(np.abs(amp) ** 2))
        if abs(norm - 1.0) > _NORM_TOL:
            raise InconsistencyError(f"norm drifted to {norm} after a {gate.kind.value} gate")
    dense = np.zeros(1 << n, dtype=complex)
    dense[idx] = amp
    return Statevector(n, dense)


def probabilities(sv: Statevector) -> np.ndarray:
    return np.abs(sv.amplitudes) ** 2


def default_label(num_wires: int) -> Callable[[int], str]:
    """Raw bitstring labels, most significant wire first."""

    def label(i: int) -> str:
        return format(i, f"0{num_wires}b")

    return label


def sample(
    sv: Statevector,
    shots: int,
    seed: int,
    labeler: Callable[[int], str] | None = None,
) -> Histogram:
    """Seeded measurement sampling in the computational basis.

    Every support point of the state appears as a bin (possibly with
    count 0); shots == 0 gives an empty histogram. ``labeler`` maps a
    basis index to its bin label; default is the raw bitstring.
    """
    if shots < 0:
        raise ValueError("shots must be >= 0")
    if labeler is None:
        labeler = default_label(sv.num_wires)
    if shots == 0:
        return Histogram(0, seed, {})
    probs = probabilities(sv)
    support = np.flatnonzero(probs > 1e-18)
    weights = probs[support]
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    tallies = np.bincount(draws, minlength=len(support))
    counts = {labeler(int(b)): int(n) for b, n in zip(support, tallies)}
    return Histogram(shots, seed, counts)


def chi_square_uniform(h: Histogram, k: int) -> float:
    """Pearson statistic against the uniform distribution over k bins."""
    if k < 1:
        raise ValueError("k must be positive")
    if len(h.counts) != k:
        raise ValueError(f"histogram has {len(h.counts)} bins, expected {k}")
    if h.shots == 0:
        raise ValueError("cannot test an empty histogram")
    expected = h.shots / k
    return float(sum((n - expected) ** 2 for n in h.counts.values()) / expected)


def histogram_csv(h: Histogram) -> str:
    """CSV text: a comment row with shots and seed, then label,count rows."""
    import csv
    import io

    buf = io.StringIO()
    buf.write(f"# shots={h.shots} seed={h.seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "count"])
    for label, n in h.counts.items():
        writer.writerow([label, n])
    return buf.getvalue()
