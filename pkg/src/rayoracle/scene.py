"""Rectangle scenes and their line-based text format.

A scene is an ordered list of axis-aligned rectangles on an integer grid
with power-of-two bounds. The text form is::

    # comment
    bounds 4 4
    rect 0 1 0 1
    rect 0 3 2 2

``bounds`` gives the x and y grid sizes; each ``rect`` line is the
left, right, bottom, and top cell coordinate of one primitive, with
left <= right and bottom <= top (degenerate sides are legal). The index
of a primitive is its order of appearance.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, ValidationError

PARAM_ORDER = ("mx", "Mx", "my", "My")

PARAM_REGISTER = {"mx": "xmin", "Mx": "xmax", "my": "ymin", "My": "ymax"}


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class Rect:
    left: int
    right: int
    bottom: int
    top: int

    def param(self, name: str) -> int:
        values = {"mx": self.left, "Mx": self.right, "my": self.bottom, "My": self.top}
        try:
            return values[name]
        except KeyError:
            raise ValueError(f"unknown parameter {name!r}") from None


@dataclass(frozen=True)
class Scene:
    bounds_x: int
    bounds_y: int
    rects: tuple[Rect, ...]

    def __post_init__(self) -> None:
        for axis, bound in (("x", self.bounds_x), ("y", self.bounds_y)):
            if bound < 2 or not _is_power_of_two(bound):
                raise ValidationError(f"{axis} bound {bound} must be a power of two >= 2")
        n = len(self.rects)
        if n < 1 or not _is_power_of_two(n):
            raise ValidationError(f"primitive count {n} must be a power of two >= 1")
        for i, r in enumerate(self.rects):
            if not 0 <= r.left <= r.right < self.bounds_x:
                raise ValidationError(
                    f"rect {i} violates 0 <= left <= right < {self.bounds_x}: "
                    f"({r.left},{r.right},{r.bottom},{r.top})"
                )
            if not 0 <= r.bottom <= r.top < self.bounds_y:
                raise ValidationError(
                    f"rect {i} violates 0 <= bottom <= top < {self.bounds_y}: "
                    f"({r.left},{r.right},{r.bottom},{r.top})"
                )

    @property
    def num_primitives(self) -> int:
        return len(self.rects)

    @property
    def index_width(self) -> int:
        # A single primitive still gets one index wire; its row is duplicated.
        return max(1, (self.num_primitives - 1).bit_length())

    def param_width(self, name: str) -> int:
        if name in ("mx", "Mx"):
            return (self.bounds_x - 1).bit_length()
        if name in ("my", "My"):
            return (self.bounds_y - 1).bit_length()
        raise ValueError(f"unknown parameter {name!r}")

    def canonical_text(self) -> str:
        lines = [f"bounds {self.bounds_x} {self.bounds_y}"]
        for r in self.rects:
            lines.append(f"rect {r.left} {r.right} {r.bottom} {r.top}")
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:10]


def parse_scene(text: str) -> Scene:
    """Parse scene text; errors name the offending line."""
    bounds: tuple[int, int] | None = None
    rects: list[Rect] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword, args = fields[0], fields[1:]
        if keyword == "bounds":
            if bounds is not None:
                raise ParseError(f"line {lineno}: duplicate bounds directive")
            if len(args) != 2:
                raise ParseError(f"line {lineno}: bounds takes 2 integers, got {len(args)}")
            bounds = (_int_field(args[0], lineno), _int_field(args[1], lineno))
        elif keyword == "rect":
            if bounds is None:
                raise ParseError(f"line {lineno}: rect before bounds")
            if len(args) != 4:
                raise ParseError(f"line {lineno}: rect takes 4 integers, got {len(args)}")
            vals = [_int_field(a, lineno) for a in args]
            rects.append(Rect(vals[0], vals[1], vals[2], vals[3]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {keyword!r}")
    if bounds is None:
        raise ParseError("missing bounds directive")
    return Scene(bounds[0], bounds[1], tuple(rects))


def _int_field(token: str, lineno: int) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(f"line {lineno}: {token!r} is not an integer") from None


def load_scene(path: str | Path) -> Scene:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read scene file {p}: {exc}") from None
    return parse_scene(text)


def normalize_selector(selector) -> tuple[str, ...]:
    """Canonicalize a parameter subset to spec order; None means all four."""
    if selector is None:
        return PARAM_ORDER
    chosen = tuple(selector)
    if not chosen:
        raise ValidationError("parameter selector must not be empty")
    for name in chosen:
        if name not in PARAM_ORDER:
            raise ValidationError(
                f"unknown parameter {name!r}; valid names: {', '.join(PARAM_ORDER)}"
            )
    if len(set(chosen)) != len(chosen):
        raise ValidationError("parameter selector has duplicates")
    return tuple(p for p in PARAM_ORDER if p in chosen)
