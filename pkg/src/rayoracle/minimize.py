"""Exact two-level minimization: prime implicant generation plus covering.

``prime_implicants`` runs the classic pairwise-combining pass over the
on-set minterms until no two terms merge; everything left uncombined at
any level is prime. ``petrick_cover`` then selects a minimum-cardinality
subset of primes covering the on-set.

The covering step is the standard set-cover orientation of Petrick's
method. Each still-uncovered input contributes one sum clause listing the
primes that cover it; the product of those clauses is expanded into a sum
of products over prime ids with the absorption identities applied eagerly
(X + XY = X, XX = X, X + X = X), so the surviving products are exactly
the inclusion-minimal covers. Algebraically this is the dual of writing
the complement as a product of sums; picking a minimum product here picks
a minimum sum of primes there, which is why the two formulations agree.

Ties between minimum-cardinality covers break deterministically: fewest
total literals first, then lexicographic order of the sorted
(pattern, care_mask) pair list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError, InconsistencyError
from .logic import Implicant, SopExpression, TruthTable, table_of_sop, try_combine

BRUTE_FORCE_MAX_ARITY = 4


@dataclass(frozen=True)
class PrimeSet:
    arity: int
    primes: frozenset[Implicant]


@dataclass(frozen=True)
class CoverSolution:
    """A selected cover plus bookkeeping about the selection.

    ``num_candidates_of_same_size`` is how many distinct minimum-cardinality
    covers survived expansion; ``is_provably_minimal`` records that the
    selection came from an exact search (always true for the methods here).
    """

    cover: SopExpression
    is_provably_minimal: bool
    num_candidates_of_same_size: int


def _canonical_key(imp: Implicant) -> tuple[int, int]:
    return (imp.pattern, imp.care_mask)


def _cover_sort(terms) -> tuple[Implicant, ...]:
    return tuple(sorted(terms, key=_canonical_key))


def prime_implicants(table: TruthTable) -> PrimeSet:
    """All prime implicants of ``table`` (no don't-cares).

    Every returned term covers only on-set inputs, since combining starts
    from on-set minterms and a merge never widens coverage beyond the two
    merged cubes.
    """
    current = {Implicant.minterm(table.arity, i) for i in table.on_set}
    primes: set[Implicant] = set()
    while current:
        merged: set[Implicant] = set()
        used: set[Implicant] = set()
        # Terms merge only when their care masks match and their patterns
        # differ in exactly one bit, so bucket by (care_mask, popcount).
        buckets: dict[tuple[int, int], list[Implicant]] = {}
        for imp in current:
            buckets.setdefault((imp.care_mask, imp.pattern.bit_count()), []).append(imp)
        for (care, ones), group in buckets.items():
            partner = buckets.get((care, ones + 1), [])
            for a in group:
                for b in partner:
                    c = try_combine(a, b)
                    if c is not None:
                        merged.add(c)
                        used.add(a)
                        used.add(b)
        primes.update(current - used)
        current = merged
    return PrimeSet(table.arity, frozenset(primes))


def _expand_product_of_sums(clauses: list[int]) -> list[int]:
    """Multiply sum clauses into a sum of products with eager absorption.

    Clauses and products are bit masks over prime ids. The result holds
    every inclusion-minimal hitting set of the clauses.
    """
    products = [0]
    for clause in clauses:
        grown: list[int] = []
        for p in products:
            if p & clause:
                # Clause already satisfied; the product survives as-is.
                grown.append(p)
                continue
            bits = clause
            while bits:
                low = bits & -bits
                grown.append(p | low)
                bits ^= low
        products = _absorb(grown)
    return products


def _absorb(products: list[int]) -> list[int]:
    """Drop duplicates and any product containing another as a subset."""
    uniq = sorted(set(products), key=lambda p: (p.bit_count(), p))
    kept: list[int] = []
    for p in uniq:
        if any(q & p == q for q in kept):
            continue
        kept.append(p)
    return kept


def _tie_break(candidates: list[tuple[Implicant, ...]]) -> tuple[tuple[Implicant, ...], int]:
    """Pick among equal-size covers; returns (winner, candidate count)."""

    def key(terms: tuple[Implicant, ...]):
        literals = sum(t.literal_count for t in terms)
        pairs = sorted(_canonical_key(t) for t in terms)
        return (literals, pairs)

    best = min(candidates, key=key)
    return best, len(candidates)


def petrick_cover(primes: PrimeSet, table: TruthTable) -> CoverSolution:
    """Exact minimum-cardinality cover of ``table`` using ``primes``.

    Essential primes (sole coverer of some input) are committed first; the
    residual instance goes through clause expansion. Raises
    InconsistencyError if some on-set input has no covering prime.
    """
    if primes.arity != table.arity:
        raise ValueError("prime set and table arity differ")
    on = sorted(table.on_set)
    if not on:
        return CoverSolution(SopExpression(table.arity, ()), True, 1)

    prime_list = sorted(primes.primes, key=_canonical_key)
    coverers: dict[int, list[int]] = {}
    for x in on:
        ids = [i for i, p in enumerate(prime_list) if p.covers(x)]
        if not ids:
            raise InconsistencyError(f"input {x} is covered by no prime implicant")
        coverers[x] = ids

    for i, p in enumerate(prime_list):
        if all(p.covers(x) for x in on):
            return CoverSolution(SopExpression(table.arity, (p,)), True, 1)

    essential_ids = {ids[0] for ids in coverers.values() if len(ids) == 1}
    covered = set()
    for i in essential_ids:
        covered.update(prime_list[i].cover_indices())
    remaining = [x for x in on if x not in covered]

    if not remaining:
        terms = _cover_sort(prime_list[i] for i in essential_ids)
        return CoverSolution(SopExpression(table.arity, terms), True, 1)

    clauses = []
    for x in remaining:
        mask = 0
        for i in coverers[x]:
            mask |= 1 << i
        clauses.append(mask)
    products = _expand_product_of_sums(clauses)
    smallest = min(p.bit_count() for p in products)
    finalists = []
    for p in products:
        if p.bit_count() != smallest:
            continue
        ids = essential_ids | {i for i in range(len(prime_list)) if p & (1 << i)}
        finalists.append(_cover_sort(prime_list[i] for i in ids))
    winner, count = _tie_break(finalists)
    return CoverSolution(SopExpression(table.arity, winner), True, count)


def minimize(table: TruthTable) -> CoverSolution:
    """Prime generation followed by exact covering."""
    return petrick_cover(prime_implicants(table), table)


def brute_force_minimal_cover(table: TruthTable) -> CoverSolution:
    """Reference minimizer: exhaustive subset search over the primes.

    Searches subsets in increasing cardinality and applies the same
    tie-break as petrick_cover among the smallest covering subsets.
    Limited to arity <= 4; raises CapacityError beyond that.
    """
    if table.arity > BRUTE_FORCE_MAX_ARITY:
        raise CapacityError(
            f"brute force limited to arity {BRUTE_FORCE_MAX_ARITY}, got {table.arity}"
        )
    if not table.on_set:
        return CoverSolution(SopExpression(table.arity, ()), True, 1)
    prime_list = sorted(prime_implicants(table).primes, key=_canonical_key)
    on_mask = 0
    for x in table.on_set:
        on_mask |= 1 << x
    masks = []
    for p in prime_list:
        m = 0
        for x in p.cover_indices():
            m |= 1 << x
        masks.append(m)
    for k in range(1, len(prime_list) + 1):
        finalists = []
        for combo in itertools.combinations(range(len(prime_list)), k):
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc == on_mask:
                finalists.append(_cover_sort(prime_list[i] for i in combo))
        if finalists:
            winner, count = _tie_break(finalists)
            return CoverSolution(SopExpression(table.arity, winner), True, count)
    raise InconsistencyError("prime implicants do not cover the on-set")


def check_equivalent(cover: SopExpression, table: TruthTable) -> bool:
    """Does the cover compute exactly the table's function?"""
    return table_of_sop(cover).on_set == table.on_set
