"""Pixel-exact rendering of patterns into bias and trigger images.

Images are numpy arrays: greyscale frames are (height, width) float64 in
[0, 1] holding display intensities; finished frames are (height, width, 3)
uint8 RGB.  Every function here is deterministic: random rule choices come
from a per-cell counter hash of (seed, row, column, draw index), so results
do not depend on evaluation order or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import RuleSet, quantize
from .pattern import TargetPattern

CANVAS_WIDTH = 800
CANVAS_HEIGHT = 600

DEFAULT_SQUARE_SIZE = 25  # m, pixels per pattern square
DEFAULT_BLUR_SIZE = 13    # n, box blur kernel width

_MASK64 = (1 << 64) - 1


class RasterError(ValueError):
    """Unrenderable geometry or parameters."""


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def cell_draw(seed: int, row: int, col: int, draw: int = 0) -> int:
    """64-bit hash for one cell's random draw; pure function of its arguments."""
    h = _splitmix64(seed & _MASK64)
    h = _splitmix64(h ^ row)
    h = _splitmix64(h ^ col)
    h = _splitmix64(h ^ draw)
    return h


@dataclass(frozen=True)
class SquareAssignment:
    """Chosen (bias, trigger) rule per pattern square."""

    pattern: TargetPattern
    seed: int
    bias: np.ndarray     # (height, width) float64 intensities
    trigger: np.ndarray  # (height, width) float64 intensities


def assign_pairs(
    pattern: TargetPattern, rs: RuleSet, seed: int, draw: int = 0
) -> SquareAssignment:
    """Pick, per square, a uniformly random rule producing that square's level."""
    bias = np.empty((pattern.height, pattern.width), dtype=np.float64)
    trigger = np.empty_like(bias)
    rules_for_level = rs.rules_for_level
    for r, row in enumerate(pattern.cells):
        for c, level in enumerate(row):
            choices = rules_for_level.get(level, ())
            if not choices:
                raise RasterError(
                    f"pattern needs level a{level} but rule set {rs.name!r} "
                    "has no rule producing it"
                )
            rule = choices[cell_draw(seed, r, c, draw) % len(choices)]
            bias[r, c] = rule.bias
            trigger[r, c] = rule.trigger
    return SquareAssignment(pattern=pattern, seed=seed, bias=bias, trigger=trigger)


def composite(
    assignment: SquareAssignment,
    side: str,
    m: int = DEFAULT_SQUARE_SIZE,
    canvas: tuple[int, int] = (CANVAS_WIDTH, CANVAS_HEIGHT),
) -> np.ndarray:
    """Paint the per-square intensities as centered m x m pixel blocks.

    Canvas pixels outside the pattern grid take the intensity of the nearest
    grid square, so edge squares extend to the canvas border.
    """
    if side not in ("bias", "trigger"):
        raise RasterError(f"side must be 'bias' or 'trigger', got {side!r}")
    if m < 1:
        raise RasterError(f"square size m must be >= 1, got {m}")
    values = assignment.bias if side == "bias" else assignment.trigger
    grid_h, grid_w = values.shape
    width, height = canvas
    if grid_w * m > width or grid_h * m > height:
        raise RasterError(
            f"{grid_w}x{grid_h} squares at m={m} exceed the {width}x{height} canvas"
        )
    x0 = (width - grid_w * m) // 2
    y0 = (height - grid_h * m) // 2
    col_of_x = np.clip((np.arange(width) - x0) // m, 0, grid_w - 1)
    row_of_y = np.clip((np.arange(height) - y0) // m, 0, grid_h - 1)
    return values[row_of_y[:, None], col_of_x[None, :]]


def box_blur(img: np.ndarray, n: int = DEFAULT_BLUR_SIZE) -> np.ndarray:
    """Mean filter over the n x n neighborhood, clamping reads at the edges.

    The input is treated as 8-bit display data: pixels are snapped to 1/255
    steps and summed exactly as integers, so the result is bit-identical to a
    literal per-pixel double sum no matter how the summation is organized.
    """
    if n < 1 or n % 2 == 0:
        raise RasterError(f"blur width n must be odd and >= 1, got {n}")
    if n == 1:
        return img.copy()
    steps = np.floor(img * 255.0 + 0.5).astype(np.int64)
    pad = n // 2
    padded = np.pad(steps, pad, mode="edge")
    # summed-area table with a zero border row/column
    table = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.int64)
    np.cumsum(padded, axis=0, out=table[1:, 1:])
    np.cumsum(table[1:, 1:], axis=1, out=table[1:, 1:])
    h, w = img.shape
    sums = table[n:, n:] - table[:-n, n:] - table[n:, :-n] + table[:-n, :-n]
    assert sums.shape == (h, w)
    return sums / (n * n * 255.0)


def to_rgb8(img: np.ndarray) -> np.ndarray:
    """Quantize a greyscale image to 8-bit (round half up) and stack to RGB."""
    grey = np.floor(img * 255.0 + 0.5).astype(np.uint8)
    return np.repeat(grey[:, :, None], 3, axis=2)


CROSSHAIR_ARM = 20  # hairlines run 40 px through the center
CROSSHAIR_GREEN = (0, 255, 0)


def overlay_crosshair(img: np.ndarray) -> np.ndarray:
    """Draw the fixation crosshair over a greyscale image; returns 8-bit RGB.

    Two one-pixel green hairlines, each 40 px long, cross at the canvas
    center.  A one-pixel black edge runs along both sides of each hairline
    and a 5x5 black block backs the intersection, keeping the center easy to
    fixate over any surround.
    """
    height, width = img.shape
    if width < 41 or height < 41:
        raise RasterError(f"canvas {width}x{height} too small for the crosshair")
    rgb = to_rgb8(img)
    cx, cy = width // 2, height // 2
    span_x = slice(cx - CROSSHAIR_ARM, cx + CROSSHAIR_ARM)
    span_y = slice(cy - CROSSHAIR_ARM, cy + CROSSHAIR_ARM)
    rgb[cy - 1 : cy + 2, span_x] = 0
    rgb[span_y, cx - 1 : cx + 2] = 0
    rgb[cy - 2 : cy + 3, cx - 2 : cx + 3] = 0
    rgb[cy, span_x] = CROSSHAIR_GREEN
    rgb[span_y, cx] = CROSSHAIR_GREEN
    return rgb
