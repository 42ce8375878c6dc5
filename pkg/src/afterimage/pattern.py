"""Target afterimage patterns: grids of 1-based level indices in square units.

A pattern says which abstract afterimage level each m x m square of the canvas
should end up showing.  Patterns are read and written as plain digit grids
(one line per row, digits 1-9), generated as uniform calibration fields, or
rendered from words with the built-in square-unit font.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import font

# full-canvas grid for the default square size m = 25 on an 800x600 canvas
DEFAULT_GRID_WIDTH = 32
DEFAULT_GRID_HEIGHT = 24


class PatternError(ValueError):
    """Malformed pattern text or unrenderable pattern request."""


@dataclass(frozen=True)
class TargetPattern:
    """Grid of afterimage level indices; `levels` is the level count n."""

    cells: tuple[tuple[int, ...], ...]
    levels: int

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise PatternError("pattern grid is empty")
        width = len(self.cells[0])
        for r, row in enumerate(self.cells):
            if len(row) != width:
                raise PatternError(f"row {r + 1} has {len(row)} cells, expected {width}")
            for c, cell in enumerate(row):
                if not 1 <= cell <= self.levels:
                    raise PatternError(
                        f"cell ({r + 1},{c + 1}) = {cell} outside 1..{self.levels}"
                    )

    @property
    def width(self) -> int:
        return len(self.cells[0])

    @property
    def height(self) -> int:
        return len(self.cells)


def load_pattern(text: str) -> TargetPattern:
    """Parse a digit-grid pattern; the level count is the largest digit used."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise PatternError("pattern text is empty")
    width = len(lines[0])
    rows = []
    for r, line in enumerate(lines):
        if len(line) != width:
            raise PatternError(
                f"line {r + 1} is {len(line)} characters long, expected {width}"
            )
        row = []
        for c, ch in enumerate(line):
            if not ch.isdigit() or ch == "0":
                raise PatternError(
                    f"invalid character {ch!r} at line {r + 1}, column {c + 1}; "
                    "expected a digit 1-9"
                )
            row.append(int(ch))
        rows.append(tuple(row))
    levels = max(max(row) for row in rows)
    return TargetPattern(cells=tuple(rows), levels=levels)


def save_pattern(pattern: TargetPattern) -> str:
    """Digit-grid text for a pattern (inverse of load_pattern)."""
    if pattern.levels > 9:
        raise PatternError("digit-grid format carries at most 9 levels")
    return "\n".join("".join(str(c) for c in row) for row in pattern.cells) + "\n"


def uniform_pattern(
    level: int,
    n: int,
    width: int = DEFAULT_GRID_WIDTH,
    height: int = DEFAULT_GRID_HEIGHT,
) -> TargetPattern:
    """Full-canvas pattern with every square at one level (calibration field)."""
    if not 1 <= level <= n:
        raise PatternError(f"level {level} outside 1..{n}")
    row = (level,) * width
    return TargetPattern(cells=(row,) * height, levels=n)


def text_to_pattern(
    word: str,
    fg: int,
    bg: int,
    thickness: int = 2,
    width: int = DEFAULT_GRID_WIDTH,
    height: int = DEFAULT_GRID_HEIGHT,
) -> TargetPattern:
    """Render a word's strokes at level `fg` on a full-canvas `bg` field.

    The word is horizontally centered and sits immediately below the canvas
    midline, so it reads next to the fixation crosshair.
    """
    if not word:
        raise PatternError("word is empty")
    if thickness not in (1, 2):
        raise PatternError("stroke thickness must be 1 or 2 square units")
    if fg == bg:
        raise PatternError("foreground and background levels must differ")
    missing = sorted({ch for ch in word if ch not in font.GLYPHS})
    if missing:
        raise PatternError(f"no glyph for character(s): {', '.join(map(repr, missing))}")

    word_w, word_h = font.word_size(word, thickness)
    top = height // 2
    if word_w > width:
        raise PatternError(
            f"word {word!r} is {word_w} squares wide at thickness {thickness}; "
            f"grid is only {width}"
        )
    if top + word_h > height:
        raise PatternError(
            f"word {word!r} is {word_h} squares tall at thickness {thickness}; "
            f"only {height - top} rows fit below the crosshair"
        )
    left = (width - word_w) // 2

    mask = font.render_word(word, thickness)
    grid = [[bg] * width for _ in range(height)]
    for r, mask_row in enumerate(mask):
        for c, inked in enumerate(mask_row):
            if inked:
                grid[top + r][left + c] = fg
    n = max(fg, bg)
    return TargetPattern(cells=tuple(tuple(row) for row in grid), levels=n)
