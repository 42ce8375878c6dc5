"""Intensity rule sets and their formal properties.

A rule set is a partial map from (bias, trigger) display-intensity pairs to
abstract afterimage levels a_1 < ... < a_n.  The bias intensity is shown first
and adapts the retina; the trigger intensity replaces it and determines, together
with the adaptation state, the perceived afterimage level.  This module holds
the rule-set data model, the six built-in rule sets, the consistency checker
that decides whether a rule set can be realized by any monotone afterimage
response, and the ambiguity/scrambling classifiers used to judge whether the
target pattern stays unrecognizable in the bias and trigger images.

Display intensities live in [0, 1] and are compared at 8-bit resolution:
two intensities are the same intensity iff they quantize to the same 1/255
step.  All functions here are pure and safe for concurrent use.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Optional, Sequence

Side = Literal["bias", "trigger"]

QUANT_STEPS = 255

BUILTIN_NAMES = ("f1", "f2", "f3", "f4", "f5", "f6")


class RuleSetError(ValueError):
    """Structurally invalid rule set (bad intensities, duplicate pairs, ...)."""


class RuleSetValidationError(ValueError):
    """Rule set rejected by a semantic check; carries the violation list."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


def quantize(value: float) -> int:
    """8-bit display step for an intensity in [0, 1] (round half up)."""
    if not (0.0 <= value <= 1.0):
        raise RuleSetError(f"intensity {value!r} outside [0, 1]")
    return int(math.floor(value * QUANT_STEPS + 0.5))


def same_intensity(a: float, b: float) -> bool:
    """True iff a and b land on the same 1/255 display step."""
    return quantize(a) == quantize(b)


@dataclass(frozen=True)
class Rule:
    """One entry of a rule set: (bias, trigger) -> afterimage level index."""

    bias: float
    trigger: float
    target: int  # 1-based level index

    def __str__(self) -> str:
        return f"({self.bias:g}, {self.trigger:g}) -> a{self.target}"


@dataclass(frozen=True)
class AfterimageLevelSet:
    """Ordered abstract afterimage levels a_1 < ... < a_n.

    Levels are identified by 1-based index; an index may carry a numeric
    anchor in [0, 1] once a bias == trigger rule pins its perceived value.
    """

    count: int
    anchors: tuple[Optional[float], ...] = ()

    def __post_init__(self):
        if self.count < 2:
            raise RuleSetError(f"need at least 2 afterimage levels, got {self.count}")
        anchors = self.anchors or (None,) * self.count
        if len(anchors) != self.count:
            raise RuleSetError("anchor tuple length must equal level count")
        object.__setattr__(self, "anchors", tuple(anchors))
        known = [(i, a) for i, a in enumerate(self.anchors) if a is not None]
        for (i, ai), (j, aj) in itertools.combinations(known, 2):
            if not ai < aj:
                raise RuleSetError(
                    f"anchors must increase with level index: a{i + 1}={ai:g} !< a{j + 1}={aj:g}"
                )

    @property
    def indices(self) -> range:
        return range(1, self.count + 1)


@dataclass(frozen=True)
class RuleSet:
    """A named partial map (bias, trigger) -> level, with derived B and T sets.

    Construction enforces the structural invariants only (intensities in range,
    targets in range, no two rules on the same quantized pair).  Surjectivity
    and model consistency are queryable properties so that defective rule sets
    can still be loaded and reported on.
    """

    name: str
    levels: AfterimageLevelSet
    rules: tuple[Rule, ...]

    def __post_init__(self):
        if not self.rules:
            raise RuleSetError(f"rule set {self.name!r} has no rules")
        seen: dict[tuple[int, int], Rule] = {}
        for rule in self.rules:
            if not 1 <= rule.target <= self.levels.count:
                raise RuleSetError(
                    f"rule {rule} targets a level outside 1..{self.levels.count}"
                )
            key = (quantize(rule.bias), quantize(rule.trigger))
            if key in seen:
                raise RuleSetError(
                    f"rules {seen[key]} and {rule} share one (bias, trigger) pair"
                )
            seen[key] = rule

    @property
    def n(self) -> int:
        return self.levels.count

    @cached_property
    def bias_values(self) -> tuple[float, ...]:
        """Distinct bias intensities, ascending (the set B)."""
        return _distinct_sorted(r.bias for r in self.rules)

    @cached_property
    def trigger_values(self) -> tuple[float, ...]:
        """Distinct trigger intensities, ascending (the set T)."""
        return _distinct_sorted(r.trigger for r in self.rules)

    @cached_property
    def rules_for_level(self) -> dict[int, tuple[Rule, ...]]:
        """Rules grouped by target level, in a fixed canonical order."""
        grouped: dict[int, list[Rule]] = {k: [] for k in self.levels.indices}
        for rule in self.rules:
            grouped[rule.target].append(rule)
        return {
            k: tuple(sorted(v, key=lambda r: (quantize(r.bias), quantize(r.trigger))))
            for k, v in grouped.items()
        }

    def lookup(self, bias: float, trigger: float) -> Optional[int]:
        """Level index for a (bias, trigger) pair, or None where undefined."""
        key = (quantize(bias), quantize(trigger))
        for rule in self.rules:
            if (quantize(rule.bias), quantize(rule.trigger)) == key:
                return rule.target
        return None

    def is_surjective(self) -> bool:
        """True iff every level index 1..n is some rule's target."""
        return {r.target for r in self.rules} == set(self.levels.indices)


def _distinct_sorted(values: Iterable[float]) -> tuple[float, ...]:
    by_step: dict[int, float] = {}
    for v in values:
        by_step.setdefault(quantize(v), v)
    return tuple(by_step[q] for q in sorted(by_step))


# --- built-in rule sets -----------------------------------------------------

_BUILTIN_TABLES: dict[str, tuple[int, tuple[tuple[float, float, int], ...]]] = {
    # trigger-ambiguous: one grey trigger, darkened by white or lit by black
    "f1": (2, ((1.0, 0.25, 1), (0.0, 0.25, 2))),
    # bias-ambiguous: constant black/white pairs plus the tuned cross pairs
    "f2": (2, ((0.0, 0.0, 1), (1.0, 1.0, 2), (0.0, 0.87, 2), (1.0, 0.15, 1))),
    # partially ambiguous, three levels from black/white biases
    "f3": (3, ((1.0, 0.37, 1), (0.0, 0.37, 2), (1.0, 0.63, 2), (0.0, 0.63, 3))),
    # bias- and trigger-scrambling; 0.39/0.62 serve as trigger and bias at once
    "f4": (2, ((1.0, 0.52, 1), (0.0, 0.48, 2), (0.39, 0.39, 1), (0.62, 0.62, 2))),
    # bias-scrambling, trigger-ambiguous
    "f5": (2, ((1.0, 0.57, 1), (0.0, 0.43, 2), (0.43, 0.43, 1), (0.57, 0.57, 2))),
    # bias-ambiguous, trigger-scrambling
    "f6": (2, ((1.0, 0.52, 1), (0.0, 0.48, 2), (0.0, 0.25, 1), (1.0, 0.74, 2))),
}


def builtin_ruleset(name: str) -> RuleSet:
    """Return one of the built-in rule sets f1..f6 by name."""
    try:
        n, table = _BUILTIN_TABLES[name]
    except KeyError:
        raise RuleSetError(
            f"unknown rule set {name!r}; built-ins are {', '.join(BUILTIN_NAMES)}"
        ) from None
    rules = tuple(Rule(b, t, a) for b, t, a in table)
    return RuleSet(name=name, levels=AfterimageLevelSet(n), rules=rules)


# --- consistency ------------------------------------------------------------

@dataclass
class LevelInterval:
    """Open/closed bounds for one afterimage level's perceived value."""

    lower: float = -math.inf
    lower_open: bool = True
    upper: float = math.inf
    upper_open: bool = True

    def contains(self, x: float) -> bool:
        if x < self.lower or (x == self.lower and self.lower_open):
            return False
        if x > self.upper or (x == self.upper and self.upper_open):
            return False
        return True

    def __str__(self) -> str:
        lo = "(" if self.lower_open else "["
        hi = ")" if self.upper_open else "]"
        return f"{lo}{self.lower:g}, {self.upper:g}{hi}"


@dataclass
class ConsistencyReport:
    """Outcome of checking a rule set against the monotone afterimage model."""

    feasible: bool
    intervals: tuple[LevelInterval, ...]
    anchors: dict[int, float]
    violations: list[str]


def check_consistency(rs: RuleSet) -> ConsistencyReport:
    """Decide whether some ordered level assignment satisfies every rule.

    Each rule constrains the perceived value of its target level: equal bias
    and trigger pin the level to that value (an anchor); a brighter bias caps
    the level strictly below the trigger intensity; a darker bias floors it
    strictly above.  Two rules sharing a trigger must order their levels
    opposite to their biases.  Feasibility of the remaining chain
    a_1 < ... < a_n over the per-level intervals is decided by one ascending
    sweep that carries the running strict lower bound.
    """
    n = rs.n
    violations: list[str] = []
    anchors: dict[int, float] = {}
    intervals = tuple(LevelInterval() for _ in range(n))

    for rule in rs.rules:
        qb, qt = quantize(rule.bias), quantize(rule.trigger)
        iv = intervals[rule.target - 1]
        if qb == qt:
            prior = anchors.get(rule.target)
            if prior is not None and quantize(prior) != qt:
                violations.append(
                    f"level a{rule.target} anchored at both {prior:g} and {rule.trigger:g}"
                )
            else:
                anchors[rule.target] = rule.trigger
        elif qb > qt:
            if rule.trigger < iv.upper:
                iv.upper = rule.trigger
        else:
            if rule.trigger > iv.lower:
                iv.lower = rule.trigger

    # higher bias with the same trigger must produce a strictly darker level
    by_trigger: dict[int, list[Rule]] = {}
    for rule in rs.rules:
        by_trigger.setdefault(quantize(rule.trigger), []).append(rule)
    for group in by_trigger.values():
        group.sort(key=lambda r: -quantize(r.bias))
        for hi, lo in itertools.combinations(group, 2):
            if hi.target >= lo.target:
                violations.append(
                    f"rules {hi} and {lo} share a trigger but bias {hi.bias:g} > "
                    f"{lo.bias:g} does not map to a darker level"
                )

    for k, value in anchors.items():
        iv = intervals[k - 1]
        if not iv.contains(value):
            violations.append(
                f"anchor a{k} = {value:g} falls outside its rule-implied interval {iv}"
            )
        iv.lower = iv.upper = value
        iv.lower_open = iv.upper_open = False

    # ascending sweep: each level must fit strictly above the one before it
    carry = -math.inf  # strict lower bound inherited from the previous level
    for k in range(1, n + 1):
        iv = intervals[k - 1]
        anchor = anchors.get(k)
        eff_lower = max(iv.lower, carry)
        if anchor is not None:
            if anchor <= carry:
                violations.append(
                    f"anchor a{k} = {anchor:g} does not exceed level a{k - 1}"
                )
            carry = anchor
        else:
            if eff_lower > iv.upper or (eff_lower == iv.upper):
                violations.append(
                    f"level a{k} has empty range: needs > {eff_lower:g} and < {iv.upper:g}"
                )
            carry = eff_lower

    return ConsistencyReport(
        feasible=not violations,
        intervals=intervals,
        anchors=anchors,
        violations=violations,
    )


# --- ambiguity and scrambling -----------------------------------------------

def _reachable(rs: RuleSet, side: Side) -> dict[int, set[int]]:
    """Map each intensity step on a side to the set of level indices it reaches."""
    reach: dict[int, set[int]] = {}
    for rule in rs.rules:
        q = quantize(rule.bias if side == "bias" else rule.trigger)
        reach.setdefault(q, set()).add(rule.target)
    return reach


def is_trigger_ambiguous(rs: RuleSet) -> bool:
    """True iff every trigger intensity can lead to every afterimage level."""
    full = set(rs.levels.indices)
    return all(levels == full for levels in _reachable(rs, "trigger").values())


def is_bias_ambiguous(rs: RuleSet) -> bool:
    """True iff every bias intensity can lead to every afterimage level."""
    full = set(rs.levels.indices)
    return all(levels == full for levels in _reachable(rs, "bias").values())


def is_partially_ambiguous(rs: RuleSet) -> bool:
    """True iff every bias and every trigger intensity reaches >= 2 levels."""
    return all(
        len(levels) >= 2
        for side in ("bias", "trigger")
        for levels in _reachable(rs, side).values()
    )


def mapping_scheme(rs: RuleSet, side: Side) -> tuple[frozenset[int], ...]:
    """Reachable-level sets per intensity on a side, darkest intensity first."""
    reach = _reachable(rs, side)
    return tuple(frozenset(reach[q]) for q in sorted(reach))


def _producers(rs: RuleSet, side: Side) -> dict[int, list[int]]:
    """Map each level to the sorted intensity steps producing it on a side."""
    prod: dict[int, set[int]] = {k: set() for k in rs.levels.indices}
    for rule in rs.rules:
        q = quantize(rule.bias if side == "bias" else rule.trigger)
        prod[rule.target].add(q)
    return {k: sorted(v) for k, v in prod.items()}


def is_scrambling(rs: RuleSet, side: Side) -> bool:
    """True iff the side defeats visual grouping of same-level intensities.

    Two conditions, both required.  First, for every intensity x producing a
    level a, and every other level a', some intensity producing a' must lie
    strictly nearer to x than every other intensity producing a (ties fail).
    Second, every level must be produced by at least two distinct intensities
    on this side.  Distances are measured in 1/255 steps.
    """
    prod = _producers(rs, side)
    if any(len(qs) < 2 for qs in prod.values()):
        return False
    for level, qs in prod.items():
        for q in qs:
            rivals = [q2 for q2 in qs if q2 != q]
            nearest_rival = min(abs(q - q2) for q2 in rivals)
            for other, other_qs in prod.items():
                if other == level:
                    continue
                if min(abs(q - c) for c in other_qs) >= nearest_rival:
                    return False
    return True


def scheme_separation_holds(scheme: Sequence[frozenset[int]]) -> bool:
    """True iff repeats of any level are separated by all other levels.

    Reading the scheme's entries in intensity order, every gap between two
    successive occurrences of a level must contain every other level strictly
    in between.  This is a sufficient condition for the nearest-rival half of
    the scrambling property.
    """
    levels: set[int] = set().union(*scheme) if scheme else set()
    for k in levels:
        positions = [i for i, entry in enumerate(scheme) if k in entry]
        for p, q in zip(positions, positions[1:]):
            between: set[int] = set().union(*scheme[p + 1:q]) if q > p + 1 else set()
            if not (levels - {k}) <= between:
                return False
    return True


# --- full-ambiguity search --------------------------------------------------

@dataclass
class AmbiguitySearchResult:
    """Outcome of searching for a rule set ambiguous on both sides."""

    found: Optional[RuleSet]
    exhaustive: bool
    candidates: int


def search_full_ambiguity(
    grid_levels: int,
    max_rules: int,
    n: int,
    *,
    require_consistency: bool = True,
    max_candidates: int = 200_000,
    seed: int = 0,
) -> AmbiguitySearchResult:
    """Hunt for a rule set that is both bias- and trigger-ambiguous.

    Candidate rule sets are drawn over a grid of `grid_levels` evenly spaced
    intensities with at most `max_rules` rules onto `n` levels.  When the
    space of partial maps is small enough it is enumerated exhaustively;
    otherwise candidates are sampled as random bias/trigger blocks, the
    structure any both-ambiguous rule set must embed.  Candidates must be
    surjective, and with `require_consistency` (the default) must also pass
    `check_consistency`; with that filter in place the search is expected to
    exhaust without a hit, confirming that full ambiguity is unachievable.
    """
    if grid_levels < 2:
        raise ValueError("need at least 2 intensity grid levels")
    if n < 2:
        raise ValueError("need n > 1 afterimage levels")
    grid = [i / (grid_levels - 1) for i in range(grid_levels)]
    pairs = [(b, t) for b in grid for t in grid]
    levels = AfterimageLevelSet(n)

    def candidate(assigned: list[tuple[float, float, int]]) -> Optional[RuleSet]:
        if len(assigned) > max_rules or {a for _, _, a in assigned} != set(levels.indices):
            return None
        rs = RuleSet(
            name="search-candidate",
            levels=levels,
            rules=tuple(Rule(b, t, a) for b, t, a in assigned),
        )
        if not (is_bias_ambiguous(rs) and is_trigger_ambiguous(rs)):
            return None
        if require_consistency and not check_consistency(rs).feasible:
            return None
        return rs

    total = (n + 1) ** len(pairs)
    if total <= max_candidates:
        checked = 0
        for targets in itertools.product(range(n + 1), repeat=len(pairs)):
            checked += 1
            assigned = [
                (b, t, a) for (b, t), a in zip(pairs, targets) if a > 0
            ]
            if not assigned:
                continue
            hit = candidate(assigned)
            if hit is not None:
                return AmbiguitySearchResult(hit, exhaustive=False, candidates=checked)
        return AmbiguitySearchResult(None, exhaustive=True, candidates=checked)

    rng = random.Random(seed)
    side_max = min(grid_levels, max_rules)
    for checked in range(1, max_candidates + 1):
        nb = rng.randint(1, side_max)
        nt = rng.randint(1, side_max)
        biases = rng.sample(grid, nb)
        triggers = rng.sample(grid, nt)
        cells = [(b, t) for b in biases for t in triggers]
        if len(cells) > max_rules:
            cells = rng.sample(cells, max_rules)
        assigned = [(b, t, rng.randint(1, n)) for b, t in cells]
        hit = candidate(assigned)
        if hit is not None:
            return AmbiguitySearchResult(hit, exhaustive=False, candidates=checked)
    return AmbiguitySearchResult(None, exhaustive=False, candidates=max_candidates)


# --- JSON interchange ---------------------------------------------------------

def ruleset_from_json(text: str) -> RuleSet:
    """Parse the JSON rule-set format: {"name", "levels", "rules": [{b,t,a}]}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RuleSetError(f"rule-set JSON does not parse: {exc}") from None
    if not isinstance(obj, dict):
        raise RuleSetError("rule-set JSON must be an object")
    try:
        name = obj["name"]
        count = obj["levels"]
        raw_rules = obj["rules"]
    except KeyError as exc:
        raise RuleSetError(f"rule-set JSON missing key {exc}") from None
    if not isinstance(count, int):
        raise RuleSetError("'levels' must be an integer")
    if not isinstance(raw_rules, list) or not raw_rules:
        raise RuleSetError("'rules' must be a non-empty list")
    rules = []
    for i, entry in enumerate(raw_rules):
        try:
            rules.append(Rule(float(entry["b"]), float(entry["t"]), int(entry["a"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise RuleSetError(f"rule #{i + 1} malformed: {exc}") from None
    return RuleSet(name=str(name), levels=AfterimageLevelSet(count), rules=tuple(rules))


def ruleset_to_json(rs: RuleSet) -> str:
    obj = {
        "name": rs.name,
        "levels": rs.n,
        "rules": [{"b": r.bias, "t": r.trigger, "a": r.target} for r in rs.rules],
    }
    return json.dumps(obj, indent=2) + "\n"


def validation_report(rs: RuleSet) -> dict:
    """Full classification of a rule set, in the report JSON field layout."""
    consistency = check_consistency(rs)
    anchors: list[Optional[float]] = [
        consistency.anchors.get(k) for k in rs.levels.indices
    ]
    return {
        "surjective": rs.is_surjective(),
        "consistent": consistency.feasible,
        "trigger_ambiguous": is_trigger_ambiguous(rs),
        "bias_ambiguous": is_bias_ambiguous(rs),
        "partially_ambiguous": is_partially_ambiguous(rs),
        "bias_scrambling": is_scrambling(rs, "bias"),
        "trigger_scrambling": is_scrambling(rs, "trigger"),
        "bias_scheme": [sorted(entry) for entry in mapping_scheme(rs, "bias")],
        "trigger_scheme": [sorted(entry) for entry in mapping_scheme(rs, "trigger")],
        "anchors": anchors,
    }
