"""One-sided ideals, annihilators, radical, socle, and singular ideals.

Subsets of a ring are bit-vector masks: bit ``i`` set means element ``i``
is a member.  Masks are plain Python integers, so set algebra is ``&``,
``|`` and friends, and two masks are equal exactly when the subsets are.
Right-sided computations are left-sided computations on the opposite ring.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .rings import FiniteRing, opposite

__all__ = [
    "ElementCensus",
    "LatticeOverflow",
    "Side",
    "all_ideals",
    "annihilator",
    "element_census",
    "fg_ideal",
    "is_essential",
    "is_ideal",
    "jacobson_radical",
    "lattice_cap",
    "mask_members",
    "mask_of",
    "principal_ideal",
    "singular_ideal",
    "socle",
    "subgroup_sum",
]

_DEFAULT_LATTICE_CAP = 20000


class LatticeOverflow(Exception):
    """An ideal-lattice enumeration exceeded its cap."""


def lattice_cap() -> int:
    """Maximum number of ideals ``all_ideals`` will enumerate."""
    raw = os.environ.get("IDEAL_LATTICE_CAP")
    if raw is None:
        return _DEFAULT_LATTICE_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"IDEAL_LATTICE_CAP must be positive, got {cap}")
    return cap


class Side(Enum):
    """Which side a module structure lives on."""

    LEFT = "left"
    RIGHT = "right"


def mask_of(elements: Iterable[int]) -> int:
    """Mask with exactly the given element indices set."""
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def mask_members(mask: int) -> list[int]:
    """Element indices of a mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _mask_from_bool(col: np.ndarray) -> int:
    return int.from_bytes(np.packbits(col, bitorder="little").tobytes(), "little")


def _left_tables(R: FiniteRing) -> dict:
    """Annihilator and principal-ideal masks for the left side, cached."""
    tables = R._cache.get("left_tables")
    if tables is not None:
        return tables
    n = R.order
    mul = np.asarray(R.mul_table, dtype=np.int32)
    is_zero = mul == R.zero
    ann = [_mask_from_bool(is_zero[:, b]) for b in range(n)]
    pri = []
    hit = np.zeros(n, dtype=bool)
    for a in range(n):
        hit[:] = False
        hit[mul[:, a]] = True
        pri.append(_mask_from_bool(hit))
    ann_first: dict[int, int] = {}
    ann_members: dict[int, list[int]] = {}
    for b, m in enumerate(ann):
        ann_first.setdefault(m, b)
        ann_members.setdefault(m, []).append(b)
    pri_first: dict[int, int] = {}
    for a, m in enumerate(pri):
        pri_first.setdefault(m, a)
    tables = {
        "ann": ann,
        "pri": pri,
        "ann_first": ann_first,
        "ann_members": ann_members,
        "pri_first": pri_first,
        "pri_distinct": sorted(pri_first),
        "ann_of_mask": {},
    }
    R._cache["left_tables"] = tables
    return tables


def _resolve(R: FiniteRing, side: Side) -> tuple[FiniteRing, dict]:
    """Ring to compute on (``R`` or its opposite) plus its left tables."""
    if side is Side.RIGHT:
        opp = opposite(R)
        return opp, _left_tables(opp)
    return R, _left_tables(R)


def annihilator(R: FiniteRing, side: Side, S: int | Iterable[int]) -> int:
    """Mask of the side annihilator of ``S`` (a mask or an element list).

    For ``Side.LEFT`` this is ``{x : x s = 0 for all s in S}``; the empty
    set annihilates to the whole ring.
    """
    ring, tables = _resolve(R, side)
    target = S if isinstance(S, int) else mask_of(S)
    full = (1 << ring.order) - 1
    if target == 0:
        return full
    memo = tables["ann_of_mask"]
    cached = memo.get(target)
    if cached is not None:
        return cached
    ann = tables["ann"]
    result = full
    for s in mask_members(target):
        result &= ann[s]
    memo[target] = result
    return result


def principal_ideal(R: FiniteRing, side: Side, a: int) -> int:
    """Mask of ``Ra`` (left) or ``aR`` (right)."""
    ring, tables = _resolve(R, side)
    if not 0 <= a < ring.order:
        raise ValueError(f"element index {a} out of range [0, {ring.order})")
    return tables["pri"][a]


def _translate(add: Sequence[Sequence[int]], mask: int, t: int) -> int:
    out = 0
    for x in mask_members(mask):
        out |= 1 << add[x][t]
    return out


def _extend_subgroup(R: FiniteRing, sub: int, g: int) -> int:
    """Subgroup generated by the subgroup ``sub`` and the element ``g``."""
    if (sub >> g) & 1:
        return sub
    add = R.add_table
    res = sub
    shift = g
    while not (res >> shift) & 1:
        res |= _translate(add, sub, shift)
        shift = add[shift][g]
    return res


def subgroup_sum(R: FiniteRing, m1: int, m2: int) -> int:
    """Additive closure of the union of two additive subgroups."""
    if m1 == m2 or m2 == 0:
        return m1
    if m1 == 0:
        return m2
    key = (m1, m2) if m1 <= m2 else (m2, m1)
    memo = R._cache.setdefault("subgroup_sums", {})
    cached = memo.get(key)
    if cached is not None:
        return cached
    res = m1
    for g in mask_members(m2):
        res = _extend_subgroup(R, res, g)
    memo[key] = res
    return res


def fg_ideal(R: FiniteRing, side: Side, generators: Sequence[int]) -> int:
    """Mask of the side ideal generated by the given elements."""
    if not generators:
        raise ValueError("generator list must be nonempty")
    ring, tables = _resolve(R, side)
    pri = tables["pri"]
    result = pri[generators[0]]
    for g in generators[1:]:
        result = subgroup_sum(ring, result, pri[g])
    return result


def is_ideal(R: FiniteRing, side: Side, mask: int) -> bool:
    """True iff the mask is an additive subgroup absorbing the side's multiplication."""
    ring, _ = _resolve(R, side)
    if not (mask >> ring.zero) & 1:
        return False
    members = mask_members(mask)
    if members and members[-1] >= ring.order:
        raise ValueError(f"mask has bits beyond ring order {ring.order}")
    add, mul = ring.add_table, ring.mul_table
    for x in members:
        row = add[x]
        for y in members:
            if not (mask >> row[y]) & 1:
                return False
    for r in range(ring.order):
        row = mul[r]
        for x in members:
            if not (mask >> row[x]) & 1:
                return False
    return True


def all_ideals(R: FiniteRing, side: Side, cap: int | None = None) -> list[int]:
    """All side ideals, sorted as masks.

    Breadth-first closure from ``{0}`` by single principal-ideal
    extensions.  Raises ``LatticeOverflow`` if more than ``cap`` ideals
    appear (default: ``lattice_cap()``); never silently truncates.
    """
    ring, tables = _resolve(R, side)
    if cap is None:
        cap = lattice_cap()
    zero_mask = 1 << ring.zero
    generators = [m for m in tables["pri_distinct"] if m != zero_mask]
    found = {zero_mask}
    frontier = [zero_mask]
    while frontier:
        next_frontier = []
        for ideal in frontier:
            for gen in generators:
                if gen & ~ideal == 0:
                    continue
                bigger = subgroup_sum(ring, ideal, gen)
                if bigger not in found:
                    found.add(bigger)
                    if len(found) > cap:
                        raise LatticeOverflow(
                            f"more than {cap} {side.value} ideals; raise IDEAL_LATTICE_CAP"
                        )
                    next_frontier.append(bigger)
        frontier = next_frontier
    return sorted(found)


@dataclass(frozen=True)
class ElementCensus:
    """Masks of the units, idempotents, and nilpotents of a ring."""

    units: int
    idempotents: int
    nilpotents: int


def element_census(R: FiniteRing) -> ElementCensus:
    """Census of units (two-sided inverses), idempotents, and nilpotents."""
    cached = R._cache.get("census")
    if cached is not None:
        return cached
    n = R.order
    mul = np.asarray(R.mul_table, dtype=np.int32)
    units = 0
    for a in range(n):
        row = mul[a]
        candidates = np.nonzero(row == R.one)[0]
        if any(mul[b][a] == R.one for b in candidates):
            units |= 1 << a
    idem = _mask_from_bool(mul.diagonal() == np.arange(n))
    nilp = 0
    for a in range(n):
        p = a
        for _ in range(n):
            if p == R.zero:
                nilp |= 1 << a
                break
            p = R.mul_table[p][a]
    census = ElementCensus(units, idem, nilp)
    R._cache["census"] = census
    return census


def jacobson_radical(R: FiniteRing) -> int:
    """Mask of ``J(R) = {a : 1 - xa is a unit for every x}``."""
    cached = R._cache.get("jacobson")
    if cached is not None:
        return cached
    n = R.order
    units = element_census(R).units
    unit_arr = np.zeros(n, dtype=bool)
    for u in mask_members(units):
        unit_arr[u] = True
    add = np.asarray(R.add_table, dtype=np.int32)
    mul = np.asarray(R.mul_table, dtype=np.int32)
    neg = np.asarray([R.neg(x) for x in range(n)], dtype=np.int32)
    radical = 0
    for a in range(n):
        one_minus = add[R.one, neg[mul[:, a]]]
        if unit_arr[one_minus].all():
            radical |= 1 << a
    R._cache["jacobson"] = radical
    return radical


def is_essential(R: FiniteRing, side: Side, mask: int) -> bool:
    """True iff the side ideal meets every nonzero side ideal nontrivially.

    It suffices to meet every nonzero principal ideal, since every nonzero
    ideal contains one.
    """
    if not is_ideal(R, side, mask):
        raise ValueError(f"mask {mask:#x} is not a {side.value} ideal")
    ring, tables = _resolve(R, side)
    pri = tables["pri"]
    zero_bit = 1 << ring.zero
    for a in range(ring.order):
        if a == ring.zero:
            continue
        if pri[a] & mask & ~zero_bit == 0:
            return False
    return True


def singular_ideal(R: FiniteRing, side: Side) -> int:
    """Mask of the side singular ideal: elements whose side annihilator is essential."""
    ring, tables = _resolve(R, side)
    ann, pri = tables["ann"], tables["pri"]
    zero_bit = 1 << ring.zero
    nonzero = [a for a in range(ring.order) if a != ring.zero]
    out = 0
    for a in range(ring.order):
        la = ann[a]
        if all(pri[b] & la & ~zero_bit for b in nonzero):
            out |= 1 << a
    return out


def _minimal_principal_masks(ring: FiniteRing, tables: dict) -> list[int]:
    zero_bit = 1 << ring.zero
    pri = tables["pri"]
    minimal = []
    for m in tables["pri_distinct"]:
        if m == zero_bit:
            continue
        if all(pri[b] == m for b in mask_members(m & ~zero_bit)):
            minimal.append(m)
    return minimal


def socle(R: FiniteRing, side: Side) -> int:
    """Mask of the sum of all minimal side ideals ({0} if there are none)."""
    ring, tables = _resolve(R, side)
    result = 1 << ring.zero
    for m in _minimal_principal_masks(ring, tables):
        result = subgroup_sum(ring, result, m)
    return result
