"""Command-line front end for minimization, synthesis, simulation, comparison.

Subcommands:

* ``minimize``: print prime implicants and a chosen minimal cover for a
  truth table given as an on-set list or a PLA-style term file.
* ``synth``: write QASM and a one-line metrics record per mode.
* ``simulate``: verify the oracle, then sample it; writes the
  verification report, histogram CSV, and histogram PNG.
* ``compare``: optimized-vs-naive metrics table, CSV, and bar chart.

Exit codes: 0 success, 2 parse failure, 3 validation failure,
4 capacity exceeded, 5 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .circuit import Circuit, GateBasis
from .errors import (
    CapacityError,
    InconsistencyError,
    ParseError,
    ValidationError,
    VerificationError,
)
from .logic import Implicant, SopExpression, TruthTable, minterm_notation, table_of_sop
from .lowering import lower
from .minimize import minimize, prime_implicants
from .qasm import export_qasm
from .report import (
    ascii_bars,
    compare_csv,
    compare_table,
    metrics_line,
    metrics_of,
    save_compare_figure,
    save_histogram_figure,
)
from .scene import Scene, load_scene, normalize_selector
from .sim import histogram_csv, run, sample
from .synth import OracleLayout, classical_map, report_text, synthesize, verify_oracle

_BASES = {
    "logical": GateBasis.LOGICAL,
    "toffoli": GateBasis.TOFFOLI,
    "elementary": GateBasis.ELEMENTARY,
}


@dataclass(frozen=True)
class RunConfig:
    scene_path: str
    mode: str
    basis: str
    shots: int
    seed: int
    selector: tuple[str, ...]
    out_dir: str

    def __post_init__(self) -> None:
        if self.shots < 0:
            raise ValidationError("shots must be nonnegative")
        if not self.selector:
            raise ValidationError("parameter selector must not be empty")

    @property
    def modes(self) -> tuple[str, ...]:
        return ("naive", "optimized") if self.mode == "both" else (self.mode,)


def _selector_from(args: argparse.Namespace) -> tuple[str, ...]:
    if args.params is None:
        return normalize_selector(None)
    return normalize_selector([p for p in args.params.split(",") if p])


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        scene_path=args.scene,
        mode=getattr(args, "mode", "both"),
        basis=args.basis,
        shots=getattr(args, "shots", 0),
        seed=getattr(args, "seed", 0),
        selector=_selector_from(args),
        out_dir=args.out,
    )


def _out_dir(config: RunConfig) -> Path:
    path = Path(config.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write(path: Path, text: str) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(text)


def _logical_circuits(config: RunConfig, scene: Scene) -> dict[str, Circuit]:
    """Synthesize the requested modes; cross-check maps when both are built."""
    circuits = {m: synthesize(scene, m, config.selector) for m in config.modes}
    if len(circuits) == 2:
        maps = {m: classical_map(c, scene, config.selector) for m, c in circuits.items()}
        if maps["naive"] != maps["optimized"]:
            raise VerificationError(
                "naive and optimized circuits compute different parameter maps"
            )
    return circuits


def _in_basis(c: Circuit, basis: str) -> Circuit:
    target = _BASES[basis]
    if target is GateBasis.LOGICAL:
        return c
    return lower(c, target)


def _parse_on_set(text: str) -> frozenset[int]:
    values = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.add(int(token))
        except ValueError as exc:
            raise ParseError(f"bad on-set entry {token!r}") from exc
    return frozenset(values)


def _table_from_args(args: argparse.Namespace) -> TruthTable:
    if args.pla is not None:
        try:
            lines = Path(args.pla).read_text().splitlines()
        except OSError as exc:
            raise ParseError(f"cannot read {args.pla}: {exc}") from exc
        terms = []
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                terms.append(Implicant.from_text(line))
        if not terms:
            raise ParseError(f"{args.pla} contains no terms")
        return table_of_sop(SopExpression(terms[0].arity, tuple(terms)))
    if args.arity is None:
        raise ParseError("--on-set requires --arity")
    try:
        return TruthTable(args.arity, _parse_on_set(args.on_set))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cmd_minimize(args: argparse.Namespace) -> int:
    table = _table_from_args(args)
    on_list = ",".join(str(i) for i in sorted(table.on_set))
    print(f"arity: {table.arity}")
    print(f"on-set: {on_list if on_list else '(empty)'}")
    if table.is_constant_false:
        print("constant 0")
        return 0
    if table.is_constant_true:
        print("constant 1")
        return 0
    primes = prime_implicants(table)
    print(f"primes ({len(primes.primes)}):")
    for p in primes.primes:
        print(f"  {minterm_notation(p)} = {p.to_text()}")
    solution = minimize(table)
    terms = solution.cover.terms
    tag = "provably minimal" if solution.is_provably_minimal else "heuristic"
    print(
        f"cover ({len(terms)} terms, {tag}, "
        f"candidates of this size: {solution.num_candidates_of_same_size}):"
    )
    print("  " + " + ".join(minterm_notation(t) for t in terms))
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    config = _config_from(args)
    scene = load_scene(config.scene_path)
    out = _out_dir(config)
    for mode, logical in _logical_circuits(config, scene).items():
        _write(out / f"oracle_{mode}.qasm", export_qasm(logical))
        line = metrics_line(_in_basis(logical, config.basis), mode, config.basis)
        _write(out / f"metrics_{mode}_{config.basis}.txt", line)
        print(line, end="")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _config_from(args)
    scene = load_scene(config.scene_path)
    out = _out_dir(config)
    for mode, logical in _logical_circuits(config, scene).items():
        report = verify_oracle(logical, scene, config.selector)
        _write(out / f"verify_{mode}.txt", report_text(report))
        if not report.passed:
            raise VerificationError(
                f"{mode} oracle disagrees with the scene at indices "
                f"{report.failing_indices()}; see verify_{mode}.txt"
            )
        circuit = _in_basis(logical, config.basis)
        layout = OracleLayout.from_circuit(circuit)
        histogram = sample(run(circuit), config.shots, config.seed, layout.label)
        _write(out / f"histogram_{mode}_{config.basis}.csv", histogram_csv(histogram))
        save_histogram_figure(histogram, str(out / f"histogram_{mode}_{config.basis}.png"))
        print(f"{mode}: verification PASS, {config.shots} shots sampled")
        if args.ascii:
            print(ascii_bars(histogram), end="")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    config = _config_from(args)
    scene = load_scene(config.scene_path)
    out = _out_dir(config)
    circuits = _logical_circuits(config, scene)
    lowered = {m: _in_basis(c, config.basis) for m, c in circuits.items()}
    optimized = metrics_of(lowered["optimized"])
    naive = metrics_of(lowered["naive"])
    print(f"basis: {config.basis}")
    print(compare_table(optimized, naive), end="")
    _write(out / f"compare_{config.basis}.csv", compare_csv(optimized, naive))
    save_compare_figure(optimized, naive, config.basis, str(out / f"compare_{config.basis}.png"))
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rayoracle",
        description="Minimized lookup oracles for rectangle scenes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_min = sub.add_parser("minimize", help="print primes and a minimal cover")
    source = p_min.add_mutually_exclusive_group(required=True)
    source.add_argument("--on-set", help="comma-separated minterm indices (may be empty)")
    source.add_argument("--pla", help="file of '01-' term lines, one per product")
    p_min.add_argument("--arity", type=int, help="variable count for --on-set")
    p_min.set_defaults(func=cmd_minimize)

    def add_common(p: argparse.ArgumentParser, with_mode: bool) -> None:
        p.add_argument("--scene", required=True, help="scene file path")
        if with_mode:
            p.add_argument(
                "--mode", choices=("naive", "optimized", "both"), default="both"
            )
        p.add_argument("--basis", choices=tuple(_BASES), default="logical")
        p.add_argument("--params", help="comma-separated subset of mx,Mx,my,My")
        p.add_argument("--out", default=".", help="output directory")

    p_synth = sub.add_parser("synth", help="write QASM and metrics records")
    add_common(p_synth, with_mode=True)
    p_synth.set_defaults(func=cmd_synth)

    p_sim = sub.add_parser("simulate", help="verify, run, and sample the oracle")
    add_common(p_sim, with_mode=True)
    p_sim.add_argument("--shots", type=int, default=4000)
    p_sim.add_argument("--seed", type=int, default=7)
    p_sim.add_argument("--ascii", action="store_true", help="print a terminal bar chart")
    p_sim.set_defaults(func=cmd_simulate)

    p_cmp = sub.add_parser("compare", help="optimized vs naive metrics table")
    add_common(p_cmp, with_mode=False)
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (VerificationError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
