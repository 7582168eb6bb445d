"""End-to-end acceptance gate.

One test per shipping criterion, each ending in a single printed
PASS line (visible with -s; pytest -v shows the per-test verdict
either way). Tolerances and budgets are frozen here on purpose;
loosening them is a behavior change, not a test fix.
"""

import math
import random
import re
import time

import numpy as np

from rayoracle.circuit import GateBasis, depth, gate_count, qubit_count
from rayoracle.cli import main
from rayoracle.logic import TruthTable, table_of_sop
from rayoracle.lowering import lower
from rayoracle.minimize import brute_force_minimal_cover, minimize
from rayoracle.sim import chi_square_uniform, run, sample
from rayoracle.synth import OracleLayout, synthesize, verify_oracle
from tests.conftest import CONFIG1, CONFIG1_PARAMS, CONFIG2, CONFIG2_PARAMS


def primes_in(output: str) -> set[str]:
    section = output.split("primes", 1)[1].split("cover", 1)[0]
    return set(re.findall(r"m\([\d,]+\)", section))


def cover_terms_in(output: str) -> list[str]:
    tail = output.split("cover", 1)[1]
    return re.findall(r"m\([\d,]+\)", tail)


def test_1_minimizer_exact_small_cases(capsys):
    start = time.time()
    assert main(["minimize", "--arity", "3", "--on-set", "1,3,7"]) == 0
    first = capsys.readouterr().out
    assert primes_in(first) == {"m(1,3)", "m(3,7)"}
    assert cover_terms_in(first) == ["m(1,3)", "m(3,7)"]

    assert main(["minimize", "--arity", "3", "--on-set", "0,1,2,5,6,7"]) == 0
    second = capsys.readouterr().out
    assert primes_in(second) == {
        "m(0,1)", "m(0,2)", "m(1,5)", "m(2,6)", "m(5,7)", "m(6,7)",
    }
    assert len(cover_terms_in(second)) == 3
    elapsed = time.time() - start
    assert elapsed < 1.0
    print(f"PASS 1: fixed on-sets give exact primes and covers ({elapsed:.2f}s)")


def test_2_minimizer_matches_brute_force():
    start = time.time()
    checked = 0
    for bits in range(256):
        on = frozenset(i for i in range(8) if bits >> i & 1)
        table = TruthTable(3, on)
        fast = minimize(table)
        slow = brute_force_minimal_cover(table)
        assert len(fast.cover.terms) == len(slow.cover.terms), on
        assert table_of_sop(fast.cover).on_set == on
        checked += 1
    rng = random.Random(8161)
    for _ in range(10_000):
        density = rng.choice((0.15, 0.3, 0.5, 0.7, 0.85))
        on = frozenset(i for i in range(16) if rng.random() < density)
        table = TruthTable(4, on)
        fast = minimize(table)
        slow = brute_force_minimal_cover(table)
        assert len(fast.cover.terms) == len(slow.cover.terms), on
        assert table_of_sop(fast.cover).on_set == on
        checked += 1
    elapsed = time.time() - start
    assert elapsed < 30.0
    print(f"PASS 2: {checked} functions match brute-force minima ({elapsed:.1f}s)")


def test_3_oracle_correctness_both_configs(config1, config2):
    start = time.time()
    for scene, expected in ((config1, CONFIG1_PARAMS), (config2, CONFIG2_PARAMS)):
        for mode in ("naive", "optimized"):
            report = verify_oracle(synthesize(scene, mode), scene)
            assert report.passed
            assert tuple(c.actual for c in report.checks) == expected
            assert report.ancillas_clean
    elapsed = time.time() - start
    assert elapsed < 1.0
    print(f"PASS 3: both configs verified in both modes, exact tuples ({elapsed:.2f}s)")


def test_4_simulation_statistics(config1):
    start = time.time()
    circuit = synthesize(config1, "optimized")
    layout = OracleLayout.from_circuit(circuit)
    hist = sample(run(circuit), 4000, 7, layout.label)
    expected_labels = {
        "0 : (0,1,0,1)",
        "1 : (0,3,2,2)",
        "2 : (1,1,3,3)",
        "3 : (3,3,3,3)",
    }
    assert set(hist.counts) == expected_labels
    for label, count in hist.counts.items():
        assert abs(count - 1000) <= 137, (label, count)
    stat = chi_square_uniform(hist, 4)
    assert stat < 16.27
    elapsed = time.time() - start
    assert elapsed < 5.0
    print(
        f"PASS 4: 4000-shot support exact, bins within 1000+-137, "
        f"chi2={stat:.2f} < 16.27 ({elapsed:.2f}s)"
    )


def test_5_optimized_strictly_beats_naive(config1, config2):
    start = time.time()
    for scene in (config1, config2):
        naive = synthesize(scene, "naive")
        optimized = synthesize(scene, "optimized")
        for basis in (GateBasis.TOFFOLI, GateBasis.ELEMENTARY):
            n = lower(naive, basis)
            o = lower(optimized, basis)
            assert depth(o) < depth(n), basis
            assert gate_count(o) < gate_count(n), basis
            assert qubit_count(o) < qubit_count(n), basis
    layout1 = OracleLayout.from_circuit(synthesize(config1, "optimized"))
    assert layout1.data_width == 10
    assert layout1.ancilla_width <= 4
    elapsed = time.time() - start
    assert elapsed < 5.0
    print(
        "PASS 5: optimized < naive on every metric in both lowered bases; "
        f"config-1 data width 10, ancillas {layout1.ancilla_width} <= 4 ({elapsed:.2f}s)"
    )


def test_6_lowering_preserves_distribution(config1, config2):
    start = time.time()
    for scene in (config1, config2):
        sigma = math.sqrt(4000 * (1 / scene.num_primitives) * (1 - 1 / scene.num_primitives))
        for mode in ("naive", "optimized"):
            logical = synthesize(scene, mode)
            elementary = lower(logical, GateBasis.ELEMENTARY)
            assert elementary.num_wires <= 21
            hist_l = sample(run(logical), 4000, 17, OracleLayout.from_circuit(logical).label)
            hist_e = sample(
                run(elementary), 4000, 17, OracleLayout.from_circuit(elementary).label
            )
            assert set(hist_l.counts) == set(hist_e.counts), mode
            for label in hist_l.counts:
                assert abs(hist_l.counts[label] - hist_e.counts[label]) <= 4 * sigma
    elapsed = time.time() - start
    assert elapsed < 30.0
    print(f"PASS 6: elementary and logical distributions agree per bin ({elapsed:.1f}s)")


def test_7_two_parameter_gap(config1):
    start = time.time()
    selector = ("mx", "Mx")
    naive = lower(synthesize(config1, "naive", selector), GateBasis.ELEMENTARY)
    optimized = lower(synthesize(config1, "optimized", selector), GateBasis.ELEMENTARY)
    assert 2 * gate_count(optimized) < gate_count(naive)
    assert 2 * depth(optimized) < depth(naive)
    elapsed = time.time() - start
    assert elapsed < 5.0
    print(
        f"PASS 7: two-parameter optimized circuit beats naive by >2x "
        f"(gates {gate_count(optimized)} vs {gate_count(naive)}, "
        f"depth {depth(optimized)} vs {depth(naive)}) ({elapsed:.2f}s)"
    )


def test_8_cli_runs_are_byte_deterministic(tmp_path):
    start = time.time()
    runs = (
        ("synth", "--scene", str(CONFIG1), "--mode", "both", "--basis", "toffoli"),
        (
            "simulate", "--scene", str(CONFIG1), "--mode", "both",
            "--shots", "4000", "--seed", "7",
        ),
        ("compare", "--scene", str(CONFIG2), "--basis", "toffoli"),
    )
    for i, args in enumerate(runs):
        a = tmp_path / f"a{i}"
        b = tmp_path / f"b{i}"
        assert main([*args, "--out", str(a)]) == 0
        assert main([*args, "--out", str(b)]) == 0
        names = sorted(p.name for p in a.iterdir())
        assert names == sorted(p.name for p in b.iterdir())
        assert names, args[0]
        for name in names:
            assert (a / name).read_bytes() == (b / name).read_bytes(), (args[0], name)
    elapsed = time.time() - start
    assert elapsed < 5.0
    print(f"PASS 8: repeated CLI runs produce byte-identical artifacts ({elapsed:.1f}s)")
