"""Monotone twist sequences for delta-matroids.

:func:`monotone_sequence` peels a minimum-cardinality feasible set that
reaches the maximum twist width one element at a time, twisting the
current system after every step, so that the width never drops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import core
from .core import SetSystem, elements, fmt_set, to_mask
from .errors import (
    IllegalScript,
    ImproperSystem,
    OutOfRangeElement,
    RepeatedElement,
    TooLarge,
)


@dataclass(frozen=True)
class Choice:
    """One scripted iteration: the chosen set X and the removed element x."""

    X: frozenset
    x: int


@dataclass(frozen=True)
class ChoiceStrategy:
    """How the algorithm resolves its free choices.

    ``canonical`` takes the canonically first X and the smallest x.
    ``scripted`` replays ``script`` and checks each choice is legal;
    ``init`` optionally fixes the starting feasible set.
    """

    mode: str = "canonical"
    script: tuple[Choice, ...] = ()
    init: Optional[frozenset] = None

    @classmethod
    def scripted(cls, steps: Sequence[tuple[Sequence[int], int]], init: Optional[Sequence[int]] = None):
        return cls(
            "scripted",
            tuple(Choice(frozenset(X), int(x)) for X, x in steps),
            None if init is None else frozenset(init),
        )


CANONICAL = ChoiceStrategy()


@dataclass(frozen=True)
class WidthTrace:
    sequence: tuple[int, ...]
    widths: tuple[int, ...]
    final_set: int
    attained: int

    def to_json(self, D: SetSystem) -> dict:
        return {
            "sequence": list(self.sequence),
            "widths": list(self.widths),
            "max_twist_width": core.max_twist_width(D),
            "feasible_final": self.final_set in D._members,
        }


def _pick(strategy: ChoiceStrategy, step: int, candidates: tuple[int, ...], allowed_x, n: int) -> tuple[int, int]:
    """Return (X, x) for this iteration; ``allowed_x(X)`` is the mask of legal x."""
    if strategy.mode == "canonical":
        X = candidates[0]
        x_mask = allowed_x(X)
        return X, (x_mask & -x_mask).bit_length()
    if strategy.mode != "scripted":
        raise ValueError(f"unknown strategy mode {strategy.mode!r}")
    if step >= len(strategy.script):
        raise IllegalScript(f"script has no choice for iteration {step + 1}")
    choice = strategy.script[step]
    X = to_mask(n, choice.X)
    if X not in candidates:
        raise IllegalScript(f"iteration {step + 1}: X={sorted(choice.X)} is not an admissible set")
    if not 1 <= choice.x <= n or not allowed_x(X) >> (choice.x - 1) & 1:
        raise IllegalScript(f"iteration {step + 1}: x={choice.x} is not an admissible element for X={sorted(choice.X)}")
    return X, choice.x


def monotone_sequence(D: SetSystem, strategy: ChoiceStrategy = CANONICAL) -> WidthTrace:
    """Build an element sequence whose prefix twists never lose width.

    The choices of X are made in the current (already twisted) system.
    Raises :class:`NotDeltaMatroid` when D fails the exchange axiom.
    """
    if not D.family:
        raise ImproperSystem("the family is empty")
    core.require_delta_matroid(D)
    n = D.ground_size
    hat = core.hat_family(D)
    if strategy.mode == "scripted" and strategy.init is not None:
        f_init = to_mask(n, strategy.init)
        if f_init not in hat or f_init.bit_count() != hat[0].bit_count():
            raise IllegalScript(f"initial set {sorted(strategy.init)} is not a minimum member of the hat family")
    else:
        f_init = hat[0]

    current = D
    f_curr = f_init
    seq: list[int] = []
    widths = [core.width(D)]
    step = 0
    while f_curr:
        if 0 not in current._members:
            candidates = tuple(X for X in core.min_family(current) if X & ~f_curr == 0)
            allowed = lambda X: X  # noqa: E731
        else:
            candidates = tuple(X for X in core.max_family(current) if f_curr & ~X)
            allowed = lambda X: f_curr & ~X  # noqa: E731
        if not candidates:
            # both branches are guaranteed by the bracketing lemma for delta-matroids
            raise AssertionError(
                f"no admissible X at iteration {step + 1} (F_curr={elements(f_curr)}); input is not a delta-matroid"
            )
        X, x = _pick(strategy, step, candidates, allowed, n)
        bit = 1 << (x - 1)
        seq.append(x)
        f_curr &= ~bit
        current = core.twist(current, bit)
        widths.append(core.width(current))
        step += 1
    if strategy.mode == "scripted" and step != len(strategy.script):
        raise IllegalScript(f"script has {len(strategy.script)} choices but the run took {step} iterations")
    return WidthTrace(tuple(seq), tuple(widths), f_init, widths[-1])


def width_profile(D: SetSystem, seq: Sequence[int]) -> list[int]:
    """Widths of D twisted by each prefix of ``seq``, starting with the empty prefix."""
    if not D.family:
        raise ImproperSystem("the family is empty")
    seen = 0
    for e in seq:
        if not 1 <= e <= D.ground_size:
            raise OutOfRangeElement(f"element {e} is not in 1..{D.ground_size}")
        if seen >> (e - 1) & 1:
            raise RepeatedElement(f"element {e} appears twice")
        seen |= 1 << (e - 1)
    out = [core.width(D)]
    prefix = 0
    for e in seq:
        prefix |= 1 << (e - 1)
        out.append(core.width(core.twist(D, prefix)))
    return out


@dataclass(frozen=True)
class Violation:
    property: int
    index: Optional[int]
    message: str


@dataclass(frozen=True)
class TraceVerdict:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify_trace(D: SetSystem, trace: WidthTrace) -> TraceVerdict:
    """Re-derive the width profile and check the three trace properties.

    1. the elements of the sequence form a member of the family;
    2. the final width equals the maximum twist width;
    3. the width profile never decreases.

    Claimed widths that disagree with the recomputed profile are reported
    against property 2 (last entry) or 3 (any earlier entry). Violations
    are sorted by property number.
    """
    found: list[Violation] = []
    try:
        actual = width_profile(D, trace.sequence)
    except (OutOfRangeElement, RepeatedElement) as exc:
        return TraceVerdict((Violation(1, None, str(exc)),))
    target = core.max_twist_width(D)
    seq = trace.sequence
    final = 0
    for e in seq:
        final |= 1 << (e - 1)

    if final not in D._members:
        found.append(Violation(1, None, f"{fmt_set(final)} is not a member of the family"))

    if len(trace.widths) != len(actual):
        found.append(Violation(3, None, f"trace lists {len(trace.widths)} widths, expected {len(actual)}"))
    else:
        for i, (claimed, real) in enumerate(zip(trace.widths, actual)):
            if claimed != real:
                prop = 2 if i == len(actual) - 1 else 3
                found.append(Violation(prop, i, f"ω(DΔ{fmt_set(_prefix(seq, i))}) = {real} ≠ {claimed}"))
    if actual[-1] != target:
        found.append(Violation(2, len(actual) - 1, f"final width {actual[-1]} ≠ maximum twist width {target}"))
    for i in range(1, len(actual)):
        if actual[i] < actual[i - 1]:
            found.append(Violation(3, i, f"width drops from {actual[i - 1]} to {actual[i]} at step {i}"))
            break
    found.sort(key=lambda v: v.property)
    return TraceVerdict(tuple(found))


def _prefix(seq: Sequence[int], i: int) -> int:
    mask = 0
    for e in seq[:i]:
        mask |= 1 << (e - 1)
    return mask


@dataclass(frozen=True)
class MonotoneWitness:
    sequence: tuple[int, ...]
    widths: tuple[int, ...]
    feasible_final: bool


BRUTE_FORCE_LIMIT = 12


def exists_monotone_sequence_bruteforce(D: SetSystem) -> Optional[MonotoneWitness]:
    """Exhaustively look for a repeat-free sequence with non-decreasing
    prefix widths that ends at the maximum twist width.

    Returns the lexicographically first such sequence, or ``None``. Only
    the set of elements used so far matters for the future of a search
    branch, so dead sets are memoized.
    """
    if not D.family:
        raise ImproperSystem("the family is empty")
    n = D.ground_size
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"ground size {n} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")
    target = core.max_twist_width(D)
    widths: dict[int, int] = {}

    def w(mask: int) -> int:
        if mask not in widths:
            widths[mask] = core.width(core.twist(D, mask))
        return widths[mask]

    dead: set[int] = set()
    path: list[int] = []

    def search(mask: int) -> bool:
        if w(mask) == target:
            return True
        if mask in dead:
            return False
        for e in range(n):
            bit = 1 << e
            if mask & bit or w(mask | bit) < w(mask):
                continue
            path.append(e + 1)
            if search(mask | bit):
                return True
            path.pop()
        dead.add(mask)
        return False

    if not search(0):
        return None
    prof = [w(_prefix(path, i)) for i in range(len(path) + 1)]
    return MonotoneWitness(tuple(path), tuple(prof), _prefix(path, len(path)) in D._members)
