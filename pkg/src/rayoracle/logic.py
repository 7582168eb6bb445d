"""Cube-based Boolean terms, sums of products, and truth tables.

Variables are indexed x_0 .. x_{n-1} with x_0 the least significant bit of
an input's integer encoding. A product term (implicant) is a pair of bit
masks: ``care_mask`` selects the variables that appear in the product and
``pattern`` gives their required values. Input ``x`` satisfies the term iff
``(x & care_mask) == pattern``.

The text form used for terms is one character per variable, most
significant variable first: '1' for a positive literal, '0' for a negated
literal, '-' for an absent variable. The implicant covering {0, 1} over
three variables prints as ``"00-"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import CapacityError, ParseError

MAX_ARITY = 30


def _check_arity(arity: int) -> None:
    if not isinstance(arity, int) or arity < 1:
        raise ValueError(f"arity must be a positive integer, got {arity!r}")
    if arity > MAX_ARITY:
        raise CapacityError(f"arity {arity} exceeds the supported maximum of {MAX_ARITY}")


def _check_input(arity: int, x: int) -> None:
    if not isinstance(x, int) or x < 0 or x >= (1 << arity):
        raise ValueError(f"input {x!r} is outside [0, 2^{arity})")


@dataclass(frozen=True, order=True)
class Implicant:
    """A product term over ``arity`` variables, encoded as two bit masks.

    Invariants: ``pattern`` has no bits outside ``care_mask`` and both
    masks fit in ``arity`` bits. An empty ``care_mask`` is the constant
    true product.
    """

    arity: int
    care_mask: int
    pattern: int

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        full = (1 << self.arity) - 1
        if self.care_mask & ~full:
            raise ValueError(f"care_mask {self.care_mask:#x} has bits outside arity {self.arity}")
        if self.pattern & ~self.care_mask:
            raise ValueError("pattern has bits outside care_mask")

    @classmethod
    def minterm(cls, arity: int, index: int) -> "Implicant":
        """The full-care product covering exactly ``index``."""
        _check_arity(arity)
        _check_input(arity, index)
        full = (1 << arity) - 1
        return cls(arity, full, index)

    @classmethod
    def from_text(cls, text: str) -> "Implicant":
        """Parse the '1'/'0'/'-' text form (most significant variable first)."""
        if not text:
            raise ParseError("empty term text")
        arity = len(text)
        _check_arity(arity)
        care = 0
        pattern = 0
        for pos, ch in enumerate(text):
            bit = 1 << (arity - 1 - pos)
            if ch == "1":
                care |= bit
                pattern |= bit
            elif ch == "0":
                care |= bit
            elif ch != "-":
                raise ParseError(f"bad character {ch!r} in term {text!r}")
        return cls(arity, care, pattern)

    def to_text(self) -> str:
        chars = []
        for i in range(self.arity - 1, -1, -1):
            bit = 1 << i
            if not self.care_mask & bit:
                chars.append("-")
            elif self.pattern & bit:
                chars.append("1")
            else:
                chars.append("0")
        return "".join(chars)

    @property
    def literal_count(self) -> int:
        return self.care_mask.bit_count()

    @property
    def size(self) -> int:
        """Number of inputs the term covers: 2^(free variables)."""
        return 1 << (self.arity - self.literal_count)

    def covers(self, x: int) -> bool:
        _check_input(self.arity, x)
        return (x & self.care_mask) == self.pattern

    def cover_indices(self) -> Iterator[int]:
        """Yield the covered inputs in ascending order."""
        free = [i for i in range(self.arity) if not self.care_mask & (1 << i)]
        for k in range(1 << len(free)):
            x = self.pattern
            for j, bit in enumerate(free):
                if k & (1 << j):
                    x |= 1 << bit
            yield x

    def __str__(self) -> str:
        return self.to_text()


def sorted_cover(imp: Implicant) -> tuple[int, ...]:
    return tuple(sorted(imp.cover_indices()))


def minterm_notation(imp: Implicant) -> str:
    """Format a term as m(i, j, ...) over its covered inputs."""
    return "m(" + ",".join(str(i) for i in sorted_cover(imp)) + ")"


def implicant_covers(imp: Implicant, x: int) -> bool:
    """Free-function form of Implicant.covers."""
    return imp.covers(x)


def try_combine(a: Implicant, b: Implicant) -> Implicant | None:
    """Merge two terms differing in exactly one cared variable.

    Returns the merged term with that variable freed, or None when the
    terms are not adjacent. Both inputs must share arity and care_mask.
    """
    if a.arity != b.arity:
        raise ValueError("cannot combine terms of different arity")
    if a.care_mask != b.care_mask:
        return None
    diff = a.pattern ^ b.pattern
    if diff == 0 or diff & (diff - 1):
        return None
    care = a.care_mask & ~diff
    return Implicant(a.arity, care, a.pattern & care)


@dataclass(frozen=True)
class SopExpression:
    """A sum (OR) of product terms, all sharing one arity.

    An empty term tuple is the constant false function.
    """

    arity: int
    terms: tuple[Implicant, ...]

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        for t in self.terms:
            if t.arity != self.arity:
                raise ValueError(f"term {t} has arity {t.arity}, expression has {self.arity}")

    def evaluate(self, x: int) -> bool:
        _check_input(self.arity, x)
        return any(t.covers(x) for t in self.terms)

    def to_text(self) -> str:
        return "\n".join(t.to_text() for t in self.terms)

    @classmethod
    def from_text(cls, text: str) -> "SopExpression":
        """Parse one term per line; blank lines are ignored."""
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("no terms in expression text")
        terms = tuple(Implicant.from_text(ln) for ln in lines)
        arities = {t.arity for t in terms}
        if len(arities) != 1:
            raise ParseError("terms have mixed arity")
        return cls(arities.pop(), terms)


@dataclass(frozen=True)
class TruthTable:
    """A Boolean function given by its on-set."""

    arity: int
    on_set: frozenset[int]

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        for x in self.on_set:
            _check_input(self.arity, x)

    @classmethod
    def from_indices(cls, arity: int, indices) -> "TruthTable":
        return cls(arity, frozenset(indices))

    def evaluate(self, x: int) -> bool:
        _check_input(self.arity, x)
        return x in self.on_set

    @property
    def is_constant_false(self) -> bool:
        return not self.on_set

    @property
    def is_constant_true(self) -> bool:
        return len(self.on_set) == 1 << self.arity


def sop_evaluate(sop: SopExpression, x: int) -> bool:
    """Free-function form of SopExpression.evaluate."""
    return sop.evaluate(x)


def table_of_sop(sop: SopExpression) -> TruthTable:
    """Evaluate an expression into an explicit truth table."""
    on = set()
    for t in sop.terms:
        on.update(t.cover_indices())
    return TruthTable(sop.arity, frozenset(on))


def tables_equal(a: TruthTable, b: TruthTable) -> bool:
    return a.arity == b.arity and a.on_set == b.on_set
