"""Timed stimulus sequences: bias image, trigger image(s), manifest.

A single-trigger sequence adapts the eye on the bias image for 20 s and
replaces it with one trigger image for 5 s.  A multi-trigger sequence extends
adaptation to 30 s and plays each intermediate trigger for 1.5 s before the
final 5 s trigger; it needs a bias-ambiguous rule set, since only then can one
already-shown bias image still lead to every requested afterimage pattern.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import raster
from .model import RuleSet, check_consistency, is_bias_ambiguous, quantize
from .pattern import TargetPattern, save_pattern
from .raster import SquareAssignment, assign_pairs, box_blur, composite, overlay_crosshair

BIAS_MS = 20_000
TRIGGER_MS = 5_000
MULTI_BIAS_MS = 30_000
MULTI_FIRST_TRIGGER_MS = 1_500


class SequenceError(ValueError):
    """Rule set or pattern combination that cannot be assembled."""


@dataclass(frozen=True)
class Frame:
    role: str  # "bias" | "trigger"
    image: np.ndarray  # (height, width, 3) uint8
    duration_ms: int


@dataclass(frozen=True)
class StimulusSequence:
    frames: tuple[Frame, ...]
    ruleset_name: str
    seed: int
    m: int
    n: int
    pattern_digests: tuple[str, ...]

    @property
    def canvas(self) -> tuple[int, int]:
        height, width, _ = self.frames[0].image.shape
        return width, height

    @property
    def fixation(self) -> tuple[int, int]:
        width, height = self.canvas
        return width // 2, height // 2


def _require_renderable(rs: RuleSet) -> None:
    from .model import RuleSetValidationError

    violations = []
    if not rs.is_surjective():
        produced = sorted({r.target for r in rs.rules})
        missing = [k for k in rs.levels.indices if k not in produced]
        violations.append(
            f"rule set {rs.name!r} is not surjective: no rule produces "
            + ", ".join(f"a{k}" for k in missing)
        )
    report = check_consistency(rs)
    violations.extend(report.violations)
    if violations:
        raise RuleSetValidationError(
            f"rule set {rs.name!r} fails validation", violations
        )


def _pattern_digest(pattern: TargetPattern) -> str:
    return hashlib.sha256(save_pattern(pattern).encode()).hexdigest()


def _render_frames(
    assignment: SquareAssignment, m: int, n: int
) -> tuple[np.ndarray, np.ndarray]:
    bias = overlay_crosshair(composite(assignment, "bias", m))
    trigger = overlay_crosshair(box_blur(composite(assignment, "trigger", m), n))
    return bias, trigger


def assemble_single(
    pattern: TargetPattern,
    rs: RuleSet,
    seed: int = 0,
    m: int = raster.DEFAULT_SQUARE_SIZE,
    n: int = raster.DEFAULT_BLUR_SIZE,
) -> StimulusSequence:
    """One bias image (20 s) followed by one trigger image (5 s)."""
    _require_renderable(rs)
    assignment = assign_pairs(pattern, rs, seed)
    bias_img, trigger_img = _render_frames(assignment, m, n)
    return StimulusSequence(
        frames=(
            Frame("bias", bias_img, BIAS_MS),
            Frame("trigger", trigger_img, TRIGGER_MS),
        ),
        ruleset_name=rs.name,
        seed=seed,
        m=m,
        n=n,
        pattern_digests=(_pattern_digest(pattern),),
    )


def assemble_multi(
    patterns: list[TargetPattern],
    rs: RuleSet,
    seed: int = 0,
    m: int = raster.DEFAULT_SQUARE_SIZE,
    n: int = raster.DEFAULT_BLUR_SIZE,
) -> StimulusSequence:
    """One bias image (30 s) followed by a trigger image per pattern.

    The bias squares are drawn for the first pattern; every later pattern gets
    its own trigger image whose squares combine with that same bias to its
    levels.  Intermediate triggers show for 1.5 s, the final one for 5 s.
    """
    if not patterns:
        raise SequenceError("need at least one target pattern")
    _require_renderable(rs)
    if not is_bias_ambiguous(rs):
        raise SequenceError(
            f"rule set {rs.name!r} is not bias-ambiguous: a bias image chosen "
            "for one pattern could not still produce every other pattern"
        )
    first = patterns[0]
    for p in patterns[1:]:
        if (p.width, p.height) != (first.width, first.height):
            raise SequenceError("all patterns in a sequence must share grid size")

    assignment = assign_pairs(first, rs, seed, draw=0)
    trigger_grids = [assignment.trigger]
    for k, pat in enumerate(patterns[1:], start=1):
        trigger_grids.append(_triggers_for_bias(assignment.bias, pat, rs, seed, k))

    bias_img = overlay_crosshair(composite(assignment, "bias", m))
    frames = [Frame("bias", bias_img, MULTI_BIAS_MS)]
    for i, grid in enumerate(trigger_grids):
        shim = SquareAssignment(
            pattern=patterns[i], seed=seed, bias=assignment.bias, trigger=grid
        )
        img = overlay_crosshair(box_blur(composite(shim, "trigger", m), n))
        last = i == len(trigger_grids) - 1
        frames.append(
            Frame("trigger", img, TRIGGER_MS if last else MULTI_FIRST_TRIGGER_MS)
        )
    return StimulusSequence(
        frames=tuple(frames),
        ruleset_name=rs.name,
        seed=seed,
        m=m,
        n=n,
        pattern_digests=tuple(_pattern_digest(p) for p in patterns),
    )


def _triggers_for_bias(
    bias: np.ndarray, pattern: TargetPattern, rs: RuleSet, seed: int, draw: int
) -> np.ndarray:
    """Per-square triggers that turn an already-chosen bias into a pattern."""
    trigger = np.empty_like(bias)
    rules_for_level = rs.rules_for_level
    for r, row in enumerate(pattern.cells):
        for c, level in enumerate(row):
            qb = quantize(float(bias[r, c]))
            choices = [
                rule for rule in rules_for_level.get(level, ())
                if quantize(rule.bias) == qb
            ]
            if not choices:
                raise SequenceError(
                    f"no rule turns bias {bias[r, c]:g} into level a{level} "
                    f"(square {r + 1},{c + 1})"
                )
            rule = choices[raster.cell_draw(seed, r, c, draw) % len(choices)]
            trigger[r, c] = rule.trigger
    return trigger


def write_sequence(seq: StimulusSequence, out_dir: str | Path) -> Path:
    """Write frame PNGs plus manifest.json; returns the manifest path."""
    from PIL import Image

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    trigger_count = 0
    entries = []
    for frame in seq.frames:
        if frame.role == "bias":
            name = "bias.png"
        else:
            trigger_count += 1
            name = f"trigger_{trigger_count:02d}.png"
        path = out / name
        Image.fromarray(frame.image, mode="RGB").save(path, format="PNG")
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        entries.append(
            {
                "role": frame.role,
                "file": name,
                "duration_ms": frame.duration_ms,
                "sha256": digest,
            }
        )
    width, height = seq.canvas
    fx, fy = seq.fixation
    manifest = {
        "version": 1,
        "ruleset": seq.ruleset_name,
        "seed": seq.seed,
        "m": seq.m,
        "n": seq.n,
        "canvas": {"w": width, "h": height},
        "fixation": {"x": fx, "y": fy},
        "frames": entries,
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest_path
