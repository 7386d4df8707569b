"""Set systems, twists and widths.

A set system over the ground set ``{1, ..., n}`` is stored as a tuple of
bit masks: element ``i`` (1-based, as users see it) is bit ``i - 1``.
The family is kept deduplicated and sorted by (cardinality, value); that
order is what "canonically first" means everywhere in this package.

Functions that take a subset accept either a mask (``int``) or an
iterable of 1-based element labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (
    GroundSetTooLarge,
    ImproperSystem,
    NoSandwich,
    NotDeltaMatroid,
    NotFeasible,
    OutOfRangeElement,
)

MAX_GROUND = 64

Subset = Union[int, Iterable[int]]


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


def elements(mask: int) -> list[int]:
    """1-based labels of the elements in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return out


def fmt_set(mask: int) -> str:
    """``{1,3}``-style rendering of a mask."""
    return "{" + ",".join(map(str, elements(mask))) + "}"


def to_mask(n: int, subset: Subset) -> int:
    """Convert a subset (mask or 1-based labels) to a mask, checking range."""
    if isinstance(subset, (int, np.integer)):
        mask = int(subset)
        if mask < 0 or mask >> n:
            raise OutOfRangeElement(f"subset mask {mask:#x} is not inside a ground set of size {n}")
        return mask
    mask = 0
    for e in subset:
        if not isinstance(e, (int, np.integer)) or isinstance(e, bool) or not 1 <= e <= n:
            raise OutOfRangeElement(f"element {e!r} is not in 1..{n}")
        mask |= 1 << (int(e) - 1)
    return mask


@dataclass(frozen=True)
class SetSystem:
    """A ground-set size together with a canonical family of masks.

    Build instances through :func:`make_set_system` or :meth:`from_masks`;
    the constructor assumes the family is already canonical.
    """

    ground_size: int
    family: tuple[int, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SetSystem":
        if n < 0:
            raise OutOfRangeElement(f"ground size must be non-negative, got {n}")
        if n > MAX_GROUND:
            raise GroundSetTooLarge(f"ground size {n} exceeds {MAX_GROUND}")
        full = (1 << n) - 1
        fam = set()
        for m in masks:
            m = int(m)
            if m < 0 or m & ~full:
                raise OutOfRangeElement(f"subset {elements(m) if m >= 0 else m} is not inside [{n}]")
            fam.add(m)
        return cls(n, tuple(sorted(fam, key=canonical_key)))

    @property
    def ground_mask(self) -> int:
        return (1 << self.ground_size) - 1

    @property
    def is_proper(self) -> bool:
        return bool(self.family)

    def __contains__(self, subset) -> bool:
        return to_mask(self.ground_size, subset) in self._members

    @property
    def _members(self) -> frozenset:
        # cached on first use; frozen dataclass forbids normal assignment
        try:
            return self.__dict__["_member_cache"]
        except KeyError:
            s = frozenset(self.family)
            object.__setattr__(self, "_member_cache", s)
            return s

    def __len__(self) -> int:
        return len(self.family)

    def as_lists(self) -> list[list[int]]:
        return [elements(m) for m in self.family]

    def __repr__(self) -> str:
        return f"SetSystem({self.ground_size}, {self.as_lists()})"


@dataclass(frozen=True)
class WidthSummary:
    r_min: int
    r_max: int
    width: int


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of the symmetric exchange check.

    ``witness`` is ``(X, Y, u)`` with X, Y masks and u a 1-based element,
    present exactly when ``holds`` is false.
    """

    holds: bool
    witness: Optional[tuple[int, int, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def make_set_system(n: int, subsets: Iterable[Iterable[int]]) -> SetSystem:
    """Build a canonical set system from 1-based element lists.

    >>> make_set_system(3, [[1], [1]])
    SetSystem(3, [[1]])
    """
    if n > MAX_GROUND:
        raise GroundSetTooLarge(f"ground size {n} exceeds {MAX_GROUND}")
    return SetSystem.from_masks(n, (to_mask(n, list(s)) for s in subsets))


def _require_proper(D: SetSystem) -> None:
    if not D.family:
        raise ImproperSystem("the family is empty")


def twist(D: SetSystem, A: Subset) -> SetSystem:
    a = to_mask(D.ground_size, A)
    return SetSystem.from_masks(D.ground_size, (x ^ a for x in D.family))


def width_summary(D: SetSystem) -> WidthSummary:
    _require_proper(D)
    # canonical order puts the smallest set first and the largest last
    lo = D.family[0].bit_count()
    hi = D.family[-1].bit_count()
    return WidthSummary(lo, hi, hi - lo)


def width(D: SetSystem) -> int:
    return width_summary(D).width


def min_family(D: SetSystem) -> tuple[int, ...]:
    _require_proper(D)
    r = D.family[0].bit_count()
    return tuple(x for x in D.family if x.bit_count() == r)


def max_family(D: SetSystem) -> tuple[int, ...]:
    _require_proper(D)
    r = D.family[-1].bit_count()
    return tuple(x for x in D.family if x.bit_count() == r)


def _as_array(masks: Sequence[int]) -> np.ndarray:
    return np.fromiter(masks, dtype=np.uint64, count=len(masks))


def _xor_popcounts(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.bitwise_xor.outer(rows, cols))


_BLOCK = 1024


def check_symmetric_exchange(D: SetSystem) -> AxiomVerdict:
    """Full scan of the symmetric exchange axiom.

    For every X, Y in the family and every u in X ^ Y some v in X ^ Y must
    put X ^ {u, v} in the family. The first failing triple in canonical
    order (X, then Y, then u) is returned as the witness. The verdict is
    cached on the (immutable) system.
    """
    _require_proper(D)
    cached = D.__dict__.get("_axiom_cache")
    if cached is None:
        cached = _scan_symmetric_exchange(D)
        object.__setattr__(D, "_axiom_cache", cached)
    return cached


def _scan_symmetric_exchange(D: SetSystem) -> AxiomVerdict:
    n = D.ground_size
    members = D._members
    fam = _as_array(D.family)
    for x in D.family:
        # exch[u] = mask of v with X ^ {u, v} feasible (v == u means X ^ {u})
        exch = []
        for u in range(n):
            xu = x ^ (1 << u)
            bits = 0
            for v in range(n):
                if xu ^ (1 << v if v != u else 0) in members:
                    bits |= 1 << v
            exch.append(bits)
        diff = fam ^ np.uint64(x)
        bad = np.zeros((n, len(fam)), dtype=bool)
        for u in range(n):
            has_u = (diff >> np.uint64(u)) & np.uint64(1) == 1
            bad[u] = has_u & ((diff & np.uint64(exch[u])) == 0)
        cols = np.flatnonzero(bad.any(axis=0))
        if cols.size:
            j = int(cols[0])
            u = int(np.flatnonzero(bad[:, j])[0])
            return AxiomVerdict(False, (x, D.family[j], u + 1))
    return AxiomVerdict(True)


def is_delta_matroid(D: SetSystem) -> bool:
    return bool(D.family) and check_symmetric_exchange(D).holds


def require_delta_matroid(D: SetSystem) -> None:
    verdict = check_symmetric_exchange(D)
    if not verdict.holds:
        raise NotDeltaMatroid(verdict.witness)


def max_twist_width(D: SetSystem) -> int:
    """Largest symmetric difference between two members of the family.

    Equal to the maximum width over all twists of D, for any proper set
    system.
    """
    _require_proper(D)
    fam = _as_array(D.family)
    best = 0
    for start in range(0, len(fam), _BLOCK):
        block = _xor_popcounts(fam[start:start + _BLOCK], fam)
        best = max(best, int(block.max()))
    return best


def twist_widths_at_members(D: SetSystem) -> list[int]:
    """``width(twist(D, F))`` for every member F, in canonical order."""
    _require_proper(D)
    fam = _as_array(D.family)
    out: list[int] = []
    for start in range(0, len(fam), _BLOCK):
        block = _xor_popcounts(fam[start:start + _BLOCK], fam)
        out.extend((block.max(axis=1) - block.min(axis=1)).tolist())
    return out


def hat_family(D: SetSystem) -> tuple[int, ...]:
    """Members F whose twist D ^ F reaches the maximum twist width."""
    widths = twist_widths_at_members(D)
    top = max(widths)
    return tuple(f for f, w in zip(D.family, widths) if w == top)


def min_hat_feasible(D: SetSystem) -> int:
    return hat_family(D)[0]


def sandwich(D: SetSystem, F0: Subset) -> tuple[int, int]:
    """Return (F1, F2) with F1 minimum, F2 maximum and F1 <= F0 <= F2."""
    require_delta_matroid(D)
    f0 = to_mask(D.ground_size, F0)
    if f0 not in D._members:
        raise NotFeasible(f"{elements(f0)} is not a member of the family")
    lower = next((x for x in min_family(D) if x & ~f0 == 0), None)
    upper = next((x for x in max_family(D) if f0 & ~x == 0), None)
    if lower is None or upper is None:
        raise NoSandwich(f"no minimum/maximum members bracket {elements(f0)}")
    return lower, upper
