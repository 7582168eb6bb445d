"""Report rendering: metrics records, comparison tables, and figures.

Figures are rendered with the Agg backend at a fixed dpi and with the
Software metadata chunk stripped, so repeated runs produce byte-identical
PNG files next to the delimited output.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .circuit import Circuit, depth, gate_count, qubit_count
from .sim import Histogram

_DPI = 100
_PNG_METADATA = {"Software": None}

METRIC_NAMES = ("depth", "gates", "qubits")


@dataclass(frozen=True)
class CircuitMetrics:
    depth: int
    gates: int
    qubits: int

    def get(self, name: str) -> int:
        return {"depth": self.depth, "gates": self.gates, "qubits": self.qubits}[name]


def metrics_of(c: Circuit) -> CircuitMetrics:
    return CircuitMetrics(depth(c), gate_count(c), qubit_count(c))


def metrics_line(c: Circuit, mode: str, basis: str) -> str:
    """Single-line key=value record, grep-friendly and order-stable."""
    m = metrics_of(c)
    fields = [
        ("scene", c.metadata.get("scene", "?")),
        ("params", c.metadata.get("params", "?")),
        ("mode", mode),
        ("basis", basis),
        ("depth", m.depth),
        ("gates", m.gates),
        ("qubits", m.qubits),
    ]
    return " ".join(f"{k}={v}" for k, v in fields) + "\n"


def parse_metrics_line(line: str) -> dict[str, str]:
    return dict(part.split("=", 1) for part in line.split())


def compare_table(optimized: CircuitMetrics, naive: CircuitMetrics) -> str:
    lines = [f"{'metric':<8}{'optimized':>10}{'naive':>8}"]
    for name in METRIC_NAMES:
        lines.append(f"{name:<8}{optimized.get(name):>10}{naive.get(name):>8}")
    return "\n".join(lines) + "\n"


def compare_csv(optimized: CircuitMetrics, naive: CircuitMetrics) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "optimized", "naive"])
    for name in METRIC_NAMES:
        writer.writerow([name, optimized.get(name), naive.get(name)])
    return buf.getvalue()


def ascii_bars(h: Histogram, width: int = 40) -> str:
    """Terminal bar chart of a histogram, deterministic and dependency-free."""
    if not h.counts:
        return "(empty histogram)\n"
    top = max(h.counts.values()) or 1
    label_w = max(len(label) for label in h.counts)
    lines = []
    for label, count in h.counts.items():
        bar = "#" * round(width * count / top)
        lines.append(f"{label:<{label_w}} | {bar} {count}")
    return "\n".join(lines) + "\n"


def save_histogram_figure(h: Histogram, path: str) -> None:
    labels = list(h.counts)
    values = [h.counts[k] for k in labels]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(labels) + 1.5), 4.0))
    ax.bar(range(len(labels)), values, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("counts")
    ax.set_title(f"{h.shots} shots, seed {h.seed}")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)


def save_compare_figure(
    optimized: CircuitMetrics, naive: CircuitMetrics, basis: str, path: str
) -> None:
    xs = range(len(METRIC_NAMES))
    opt_vals = [optimized.get(n) for n in METRIC_NAMES]
    naive_vals = [naive.get(n) for n in METRIC_NAMES]
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    bar_w = 0.38
    ax.bar([i - bar_w / 2 for i in xs], opt_vals, bar_w, label="optimized", color="#4878a8")
    ax.bar([i + bar_w / 2 for i in xs], naive_vals, bar_w, label="naive", color="#b8604d")
    for i, v in zip(xs, opt_vals):
        ax.text(i - bar_w / 2, v, str(v), ha="center", va="bottom", fontsize=8)
    for i, v in zip(xs, naive_vals):
        ax.text(i + bar_w / 2, v, str(v), ha="center", va="bottom", fontsize=8)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(METRIC_NAMES)
    ax.set_title(f"optimized vs naive ({basis} basis)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)
