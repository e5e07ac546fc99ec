"""Element and ring classification along the morphic hierarchy.

An element ``a`` is, on the left: pseudo-morphic when ``Ra = l(b)`` for
some ``b``; generalized morphic when ``l(a)`` is principal; quasi-morphic
when both hold (witnesses independent); morphic when a single ``b``
satisfies ``Ra = l(b)`` and ``l(a) = Rb``.  Ring-level flags quantify over
all elements.  Right-side versions are the left-side versions on the
opposite ring.  All witnesses are least-index, so profiles are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ideals import (
    LatticeOverflow,
    Side,
    all_ideals,
    annihilator,
    element_census,
    mask_members,
    subgroup_sum,
    _resolve,
)
from .rings import FiniteRing, OrderCapExceeded, opposite, order_cap

__all__ = [
    "ClassProfile",
    "CommutationProfile",
    "ElementClass",
    "Flag",
    "MorphicProfile",
    "RegularityProfile",
    "SideHierarchy",
    "StructuralProfile",
    "classify_ring",
    "commutation_profile",
    "element_class",
    "regularity_profile",
    "ring_morphic_profile",
    "structural_profile",
]

_PAIR_BUDGET = 4_000_000


@dataclass(frozen=True)
class Flag:
    """A ternary predicate outcome with optional witness or counterexample.

    ``status`` is ``True``, ``False``, or ``None`` for indeterminate;
    indeterminate arises only from enumeration limits (ideal-lattice or
    pair budgets), never from guessing.
    """

    status: bool | None
    witness: object = None
    counterexample: object = None
    note: str | None = None

    @property
    def text(self) -> str:
        if self.status is None:
            return "indeterminate"
        return "true" if self.status else "false"


@dataclass(frozen=True)
class ElementClass:
    """Morphic-hierarchy membership of one element on one side."""

    element: int
    side: Side
    pseudo: bool
    pseudo_witness: int | None
    generalized: bool
    generalized_witness: int | None
    quasi: bool
    quasi_witnesses: tuple[int, int] | None
    morphic: bool
    morphic_witness: int | None


@dataclass(frozen=True)
class SideHierarchy:
    """Ring-level hierarchy flags for one side."""

    side: Side
    pseudo: Flag
    generalized: Flag
    quasi: Flag
    morphic: Flag


@dataclass(frozen=True)
class MorphicProfile:
    left: SideHierarchy
    right: SideHierarchy


@dataclass(frozen=True)
class RegularityProfile:
    regular: Flag
    unit_regular: Flag
    strongly_regular: Flag


@dataclass(frozen=True)
class CommutationProfile:
    reduced: Flag
    reversible: Flag
    symmetric: Flag
    semiprime: Flag
    directly_finite: Flag


@dataclass(frozen=True)
class StructuralProfile:
    bezout_left: Flag
    bezout_right: Flag
    p_injective_left: Flag
    p_injective_right: Flag
    dual_ring: Flag
    qf_finite: Flag
    lear_left: Flag
    lear_right: Flag
    pp_left: Flag
    pp_right: Flag
    strongly_clean: Flag
    ikeda_nakayama_left: Flag
    ikeda_nakayama_right: Flag


@dataclass(frozen=True)
class ClassProfile:
    """Full classification of a ring."""

    expression: str | None
    order: int
    morphic: MorphicProfile
    regularity: RegularityProfile
    commutation: CommutationProfile
    structural: StructuralProfile


def element_class(R: FiniteRing, side: Side, a: int) -> ElementClass:
    """Classify one element; witnesses are the least satisfying indices."""
    ring, tables = _resolve(R, side)
    if not 0 <= a < ring.order:
        raise ValueError(f"element index {a} out of range [0, {ring.order})")
    pri, ann = tables["pri"], tables["ann"]
    ra, la = pri[a], ann[a]
    pseudo_witness = tables["ann_first"].get(ra)
    generalized_witness = tables["pri_first"].get(la)
    pseudo = pseudo_witness is not None
    generalized = generalized_witness is not None
    quasi = pseudo and generalized
    morphic_witness = None
    if quasi:
        for b in tables["ann_members"].get(ra, ()):
            if pri[b] == la:
                morphic_witness = b
                break
    return ElementClass(
        element=a,
        side=side,
        pseudo=pseudo,
        pseudo_witness=pseudo_witness,
        generalized=generalized,
        generalized_witness=generalized_witness,
        quasi=quasi,
        quasi_witnesses=(pseudo_witness, generalized_witness) if quasi else None,
        morphic=morphic_witness is not None,
        morphic_witness=morphic_witness,
    )


def _side_hierarchy(R: FiniteRing, side: Side) -> SideHierarchy:
    ring, tables = _resolve(R, side)
    pri, ann = tables["pri"], tables["ann"]
    ann_first, pri_first = tables["ann_first"], tables["pri_first"]
    ann_members = tables["ann_members"]
    first_fail: dict[str, int] = {}
    for a in range(ring.order):
        ra, la = pri[a], ann[a]
        pseudo = ra in ann_first
        generalized = la in pri_first
        if not pseudo and "pseudo" not in first_fail:
            first_fail["pseudo"] = a
        if not generalized and "generalized" not in first_fail:
            first_fail["generalized"] = a
        if not (pseudo and generalized):
            if "quasi" not in first_fail:
                first_fail["quasi"] = a
            if "morphic" not in first_fail:
                first_fail["morphic"] = a
            continue
        if "morphic" not in first_fail:
            if not any(pri[b] == la for b in ann_members[ra]):
                first_fail["morphic"] = a

    def flag(name: str) -> Flag:
        if name in first_fail:
            return Flag(False, counterexample=first_fail[name])
        return Flag(True)

    return SideHierarchy(
        side=side,
        pseudo=flag("pseudo"),
        generalized=flag("generalized"),
        quasi=flag("quasi"),
        morphic=flag("morphic"),
    )


def ring_morphic_profile(R: FiniteRing) -> MorphicProfile:
    """Hierarchy flags for both sides; first failing element as counterexample."""
    return MorphicProfile(
        left=_side_hierarchy(R, Side.LEFT),
        right=_side_hierarchy(R, Side.RIGHT),
    )


def regularity_profile(R: FiniteRing) -> RegularityProfile:
    """Von Neumann regularity and its unit and strong refinements."""
    n = R.order
    mul = np.asarray(R.mul_table, dtype=np.int32)
    units = element_census(R).units
    unit_idx = np.asarray(mask_members(units), dtype=np.int32)

    regular = Flag(True)
    for a in range(n):
        if not (mul[mul[a], a] == a).any():
            regular = Flag(False, counterexample=a)
            break
    unit_regular = Flag(True)
    for a in range(n):
        if not (mul[mul[a, unit_idx], a] == a).any():
            unit_regular = Flag(False, counterexample=a)
            break
    strongly_regular = Flag(True)
    for a in range(n):
        if not (mul[mul[a, a]] == a).any():
            strongly_regular = Flag(False, counterexample=a)
            break
    return RegularityProfile(regular, unit_regular, strongly_regular)


def _is_commutative(R: FiniteRing) -> bool:
    flag = R._cache.get("commutative")
    if flag is None:
        mul = np.asarray(R.mul_table, dtype=np.int32)
        flag = bool(np.array_equal(mul, mul.T))
        R._cache["commutative"] = flag
    return flag


def commutation_profile(R: FiniteRing) -> CommutationProfile:
    """Reduced, reversible, symmetric, semiprime, and directly finite flags."""
    n = R.order
    zero, one = R.zero, R.one
    mul = np.asarray(R.mul_table, dtype=np.int32)
    census = element_census(R)

    if census.nilpotents == 1 << zero:
        reduced = Flag(True)
    else:
        reduced = Flag(False, counterexample=mask_members(census.nilpotents & ~(1 << zero))[0])

    is_zero = mul == zero
    reversible = Flag(True)
    bad = np.argwhere(is_zero & ~is_zero.T)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        reversible = Flag(False, counterexample=(a, b))

    if _is_commutative(R):
        symmetric = Flag(True)
    elif not reversible.status:
        # a reversibility failure ab = 0, ba != 0 breaks symmetry at the
        # triple (a, b, 1): abc = 0 but bac = ba != 0
        a, b = reversible.counterexample
        symmetric = Flag(False, counterexample=(a, b, one))
    else:
        symmetric = Flag(True)
        step = max(1, (1 << 24) // max(1, n * n))
        for start in range(0, n, step):
            rows = mul[start : start + step]
            abc = mul[rows]                      # [i,b,c] = (a b) c
            acb = abc.swapaxes(1, 2)             # [i,b,c] = (a c) b
            bac = mul[mul[:, start : start + step].T]  # [i,b,c] = (b a) c
            viol = (abc == zero) & ((acb != zero) | (bac != zero))
            if viol.any():
                w = np.argwhere(viol)[0]
                symmetric = Flag(
                    False, counterexample=(int(w[0]) + start, int(w[1]), int(w[2]))
                )
                break

    semiprime = Flag(True)
    for a in range(n):
        if a != zero and (mul[mul[a], a] == zero).all():
            semiprime = Flag(False, counterexample=a)
            break

    directly_finite = Flag(True)
    for b, a in np.argwhere(mul == one):
        if mul[a, b] != one:
            directly_finite = Flag(False, counterexample=(int(a), int(b)))
            break

    return CommutationProfile(reduced, reversible, symmetric, semiprime, directly_finite)


def _bezout(R: FiniteRing, side: Side) -> Flag:
    """Pairwise principal-sum closure.

    Pairwise closure suffices for all finitely generated ideals: sums fold
    two generators at a time, each partial sum staying principal.
    """
    ring, tables = _resolve(R, side)
    pri_first = tables["pri_first"]
    masks = tables["pri_distinct"]
    for i, m1 in enumerate(masks):
        for m2 in masks[i + 1 :]:
            total = subgroup_sum(ring, m1, m2)
            if total not in pri_first:
                return Flag(False, counterexample=(pri_first[m1], pri_first[m2]))
    return Flag(True)


def _p_injective(R: FiniteRing, side: Side) -> Flag:
    """Left flag: ``rl(a) = aR`` for all ``a``; right flag: ``lr(a) = Ra``."""
    other = Side.RIGHT if side is Side.LEFT else Side.LEFT
    _, own = _resolve(R, side)
    _, mirrored = _resolve(R, other)
    ann = own["ann"]          # side annihilator of a, e.g. l(a) for Left
    pri = mirrored["pri"]     # other-side principal ideal, e.g. aR for Left
    for a in range(R.order):
        if annihilator(R, other, ann[a]) != pri[a]:
            return Flag(False, counterexample=a)
    return Flag(True)


def _dual_ring(R: FiniteRing) -> Flag:
    try:
        left = all_ideals(R, Side.LEFT)
        right = all_ideals(R, Side.RIGHT)
    except LatticeOverflow as exc:
        return Flag(None, note=str(exc))
    for ideal in left:
        if annihilator(R, Side.LEFT, annihilator(R, Side.RIGHT, ideal)) != ideal:
            return Flag(False, counterexample=ideal)
    for ideal in right:
        if annihilator(R, Side.RIGHT, annihilator(R, Side.LEFT, ideal)) != ideal:
            return Flag(False, counterexample=ideal)
    return Flag(True)


def _lear(R: FiniteRing, side: Side) -> Flag:
    """Every side ideal is the side annihilator of a single element."""
    try:
        ideals = all_ideals(R, side)
    except LatticeOverflow as exc:
        return Flag(None, note=str(exc))
    _, tables = _resolve(R, side)
    ann_first = tables["ann_first"]
    for ideal in ideals:
        if ideal not in ann_first:
            return Flag(False, counterexample=ideal)
    return Flag(True)


def _pp(R: FiniteRing, side: Side) -> Flag:
    """Every element annihilator is generated by an idempotent."""
    ring, tables = _resolve(R, side)
    pri, ann = tables["pri"], tables["ann"]
    idem = mask_members(element_census(ring).idempotents)
    idem_masks = {pri[e] for e in idem}
    for a in range(ring.order):
        if ann[a] not in idem_masks:
            return Flag(False, counterexample=a)
    return Flag(True)


def _strongly_clean(R: FiniteRing) -> Flag:
    census = element_census(R)
    idem = mask_members(census.idempotents)
    units = census.units
    for a in range(R.order):
        found = False
        for e in idem:
            u = R.sub(a, e)
            if (units >> u) & 1 and R.mul(e, u) == R.mul(u, e):
                found = True
                break
        if not found:
            return Flag(False, counterexample=a)
    return Flag(True)


def _ikeda_nakayama(R: FiniteRing, side: Side) -> Flag:
    """For side ideals: ann(I1 ∩ I2) = ann(I1) + ann(I2) on the other side."""
    other = Side.RIGHT if side is Side.LEFT else Side.LEFT
    try:
        ideals = all_ideals(R, side)
    except LatticeOverflow as exc:
        return Flag(None, note=str(exc))
    if len(ideals) * (len(ideals) + 1) // 2 > _PAIR_BUDGET:
        return Flag(None, note=f"{len(ideals)} ideals exceed the pair budget")
    for i, m1 in enumerate(ideals):
        a1 = annihilator(R, other, m1)
        for m2 in ideals[i:]:
            a2 = annihilator(R, other, m2)
            lhs = annihilator(R, other, m1 & m2)
            rhs = subgroup_sum(R, a1, a2)
            if lhs != rhs:
                return Flag(False, counterexample=(m1, m2))
    return Flag(True)


def structural_profile(R: FiniteRing) -> StructuralProfile:
    """Bezout, P-injectivity, duality, annihilator, p.p., and clean flags."""
    dual = _dual_ring(R)
    qf = Flag(dual.status, witness=dual.witness, counterexample=dual.counterexample,
              note="finite ring: dual annihilator conditions model quasi-Frobenius")
    return StructuralProfile(
        bezout_left=_bezout(R, Side.LEFT),
        bezout_right=_bezout(R, Side.RIGHT),
        p_injective_left=_p_injective(R, Side.LEFT),
        p_injective_right=_p_injective(R, Side.RIGHT),
        dual_ring=dual,
        qf_finite=qf,
        lear_left=_lear(R, Side.LEFT),
        lear_right=_lear(R, Side.RIGHT),
        pp_left=_pp(R, Side.LEFT),
        pp_right=_pp(R, Side.RIGHT),
        strongly_clean=_strongly_clean(R),
        ikeda_nakayama_left=_ikeda_nakayama(R, Side.LEFT),
        ikeda_nakayama_right=_ikeda_nakayama(R, Side.RIGHT),
    )


def classify_ring(R: FiniteRing) -> ClassProfile:
    """Full profile; refuses rings above ``order_cap()``."""
    cap = order_cap()
    if R.order > cap:
        raise OrderCapExceeded(
            f"full classification capped at order {cap}, got {R.order}; "
            f"raise RING_ORDER_CAP or use single profiles"
        )
    return ClassProfile(
        expression=R.construction,
        order=R.order,
        morphic=ring_morphic_profile(R),
        regularity=regularity_profile(R),
        commutation=commutation_profile(R),
        structural=structural_profile(R),
    )
