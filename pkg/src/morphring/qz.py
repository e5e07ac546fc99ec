"""Exact arithmetic for Q/Z as a module over the integers.

Verifies, without truncation error, the lattice of cyclic submodules of
Q/Z (containment is divisibility, meet is gcd, join is lcm) and the
element-wise morphicity of the trivial extension Z ⋉ (Q/Z).  Although
that ring is infinite, every principal ideal and every single-element
annihilator has one of two finitely-describable shapes, ``dZ ⋉ Q/Z`` or
``0 ⋉ (1/a)Z/Z``, so ideal equality reduces to integer comparison.
Brute-force cross-checks run on finite grids ``(1/D)Z/Z`` chosen large
enough that every product stays on the grid.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd, lcm

from .verify import VerificationReport

__all__ = [
    "FULL",
    "CyclicSub",
    "QFrac",
    "TEIdeal",
    "base_annihilator",
    "cyclic_submodule",
    "lattice_meet_join",
    "submodule_leq",
    "te_left_annihilator",
    "te_morphic_witness",
    "te_principal_ideal",
    "te_product",
    "verify_qz_suite",
]


@dataclass(frozen=True, slots=True)
class QFrac:
    """An element ``num/den + Z`` of Q/Z in canonical reduced form.

    Canonical means ``0 <= num < den`` and ``gcd(num, den) = 1``; the zero
    element is exactly the one with ``den = 1``.  The constructor reduces
    any integer pair, so ``QFrac(3, 6) == QFrac(1, 2)``.
    """

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ValueError("denominator must be nonzero")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @property
    def is_zero(self) -> bool:
        return self.den == 1

    def __add__(self, other: "QFrac") -> "QFrac":
        return QFrac(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __neg__(self) -> "QFrac":
        return QFrac(-self.num, self.den)

    def scale(self, r: int) -> "QFrac":
        """The module action of the integer ``r``."""
        return QFrac(r * self.num, self.den)

    def __str__(self) -> str:
        return "0" if self.is_zero else f"{self.num}/{self.den}"


class _Full:
    """Marker for the whole module Q/Z."""

    _instance = None

    def __new__(cls) -> "_Full":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Full"

    def __str__(self) -> str:
        return "Q/Z"


FULL = _Full()


@dataclass(frozen=True, slots=True)
class CyclicSub:
    """The cyclic submodule ``(1/den)Z/Z`` of Q/Z; ``den = 1`` is zero."""

    den: int

    def __post_init__(self) -> None:
        if self.den < 1:
            raise ValueError(f"denominator must be positive, got {self.den}")

    def __str__(self) -> str:
        return "0" if self.den == 1 else f"(1/{self.den})Z/Z"


def _part_contains(part: CyclicSub | _Full, q: QFrac) -> bool:
    if part is FULL:
        return True
    return part.den % q.den == 0


@dataclass(frozen=True, slots=True)
class TEIdeal:
    """An ideal ``base·Z ⋉ part`` of the trivial extension Z ⋉ (Q/Z).

    ``base = 0`` encodes the zero base ideal.  A nonzero base forces
    ``part = FULL``: an ideal containing ``(d, q)`` with ``d != 0`` absorbs
    ``(0, m)·(d, q) = (0, m·d)``, and ``d`` scales Q/Z onto itself.
    """

    base: int
    part: CyclicSub | _Full

    def __post_init__(self) -> None:
        if self.base < 0:
            raise ValueError(f"base must be nonnegative, got {self.base}")
        if self.base != 0 and self.part is not FULL:
            raise ValueError("a nonzero base forces the full module part")

    def contains(self, n: int, q: QFrac) -> bool:
        base_ok = n == 0 if self.base == 0 else n % self.base == 0
        return base_ok and _part_contains(self.part, q)

    def __str__(self) -> str:
        return f"{self.base}Z⋉{self.part}"


def cyclic_submodule(r: int, c: int) -> CyclicSub:
    """The submodule of Q/Z generated by ``r/c``, namely ``(1/c')Z/Z``
    with ``c' = c/gcd(r, c)``."""
    if c == 0:
        raise ValueError("denominator must be nonzero")
    c = abs(c)
    return CyclicSub(c // gcd(r, c))


def submodule_leq(a: int, b: int) -> bool:
    """Whether ``(1/b)Z/Z`` is contained in ``(1/a)Z/Z``; holds iff b | a."""
    if a < 1 or b < 1:
        raise ValueError(f"denominators must be positive, got {a} and {b}")
    return a % b == 0


def lattice_meet_join(a: int, b: int) -> tuple[CyclicSub, CyclicSub]:
    """Meet (intersection) and join (sum) of ``(1/a)Z/Z`` and ``(1/b)Z/Z``."""
    if a < 1 or b < 1:
        raise ValueError(f"denominators must be positive, got {a} and {b}")
    return CyclicSub(gcd(a, b)), CyclicSub(lcm(a, b))


def base_annihilator(q: QFrac) -> int:
    """The integer ``c`` with ``ann_Z(q) = cZ``; equals the denominator."""
    return q.den


def te_product(n1: int, q1: QFrac, n2: int, q2: QFrac) -> tuple[int, QFrac]:
    """The product ``(n1, q1)·(n2, q2) = (n1 n2, n1 q2 + q1 n2)``."""
    return n1 * n2, q2.scale(n1) + q1.scale(n2)


def te_principal_ideal(n: int, q: QFrac) -> TEIdeal:
    """The ideal generated by ``(n, q)`` in Z ⋉ (Q/Z).

    A nonzero base component absorbs all of Q/Z because the module is
    divisible; a zero base leaves exactly the cyclic submodule of ``q``.
    """
    if n != 0:
        return TEIdeal(abs(n), FULL)
    return TEIdeal(0, CyclicSub(q.den))


def te_left_annihilator(n: int, q: QFrac) -> TEIdeal:
    """The annihilator of ``(n, q)``: pairs ``(r, m)`` with ``(rn, rq+mn) = 0``."""
    if n != 0:
        return TEIdeal(0, CyclicSub(abs(n)))
    if not q.is_zero:
        return TEIdeal(q.den, FULL)
    return TEIdeal(1, FULL)


def te_morphic_witness(n: int, q: QFrac) -> tuple[int, QFrac]:
    """A single element ``b`` with ``Ta = ann(b)`` and ``ann(a) = Tb``.

    Existence for every ``a = (n, q)`` is the element-wise content of the
    morphicity of Z ⋉ (Q/Z); both equalities are asserted symbolically
    before returning.
    """
    if n != 0:
        witness = (0, QFrac(1, abs(n)))
    elif not q.is_zero:
        witness = (q.den, QFrac(0, 1))
    else:
        witness = (1, QFrac(0, 1))
    assert te_principal_ideal(n, q) == te_left_annihilator(*witness)
    assert te_left_annihilator(n, q) == te_principal_ideal(*witness)
    return witness


def _module_fracs(bound: int) -> list[QFrac]:
    """All elements of Q/Z with denominator at most ``bound``."""
    out = [QFrac(0, 1)]
    for den in range(2, bound + 1):
        out.extend(QFrac(num, den) for num in range(1, den) if gcd(num, den) == 1)
    return out


def _grid_mask(sub_den: int, grid: int) -> int:
    """Bitmask of ``(1/sub_den)Z/Z`` on the grid ``(1/grid)Z/Z``."""
    step = grid // sub_den
    mask = 0
    for v in range(0, grid, step):
        mask |= 1 << v
    return mask


def _sumset(m1: int, m2: int, grid: int) -> int:
    full = (1 << grid) - 1
    out = 0
    v = 0
    rest = m2
    while rest:
        if rest & 1:
            out |= ((m1 << v) | (m1 >> (grid - v))) & full if v else m1
        rest >>= 1
        v += 1
    return out


def verify_qz_suite(bound: int) -> VerificationReport:
    """Brute-force the submodule lattice and the extension's ideal formulas.

    For all denominators up to ``bound``: generated submodules match the
    gcd formula, containment matches divisibility, meet and join match
    set intersection and set sum on a common grid, and submodules are
    isomorphic only to themselves.  Witness identities are checked
    symbolically for every extension element in range, and the three
    ideal formulas are re-derived on concrete grids at a small internal
    bound where every product is enumerable.
    """
    start = time.perf_counter()
    if bound < 2:
        raise ValueError(f"bound must be at least 2, got {bound}")
    expression = "Z⋉(Q/Z)"

    def fail(check: str, payload: dict) -> VerificationReport:
        return VerificationReport(
            "quotient_module_lattice", expression, "refuted",
            {"check": check, **payload}, time.perf_counter() - start)

    generator_checks = 0
    for c in range(1, bound + 1):
        for r in range(c):
            generated = 0
            acc = 0
            for _ in range(c):
                generated |= 1 << acc
                acc = (acc + r) % c
            expected = _grid_mask(cyclic_submodule(r, c).den, c)
            if generated != expected:
                return fail("generator_formula", {"r": r, "c": c})
            generator_checks += 1

    pairs = 0
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            grid = lcm(a, b)
            mask_a = _grid_mask(a, grid)
            mask_b = _grid_mask(b, grid)
            if (mask_b & ~mask_a == 0) != submodule_leq(a, b):
                return fail("containment_divisibility", {"a": a, "b": b})
            meet, join = lattice_meet_join(a, b)
            if mask_a & mask_b != _grid_mask(meet.den, grid):
                return fail("meet_intersection", {"a": a, "b": b})
            if _sumset(mask_a, mask_b, grid) != _grid_mask(join.den, grid):
                return fail("join_sum", {"a": a, "b": b})
            same_size = bin(mask_a).count("1") == bin(mask_b).count("1")
            iso_rigid = (base_annihilator(QFrac(1, a)) == base_annihilator(QFrac(1, b)))
            if same_size != (a == b) or iso_rigid != (a == b):
                return fail("isomorphism_rigidity", {"a": a, "b": b})
            pairs += 1

    symbolic = 0
    zero = QFrac(0, 1)
    fracs = _module_fracs(bound)
    for n in range(-bound, bound + 1):
        if n == 0:
            for q in fracs:
                wn, wq = te_morphic_witness(0, q)
                if te_product(0, q, wn, wq) != (0, zero):
                    return fail("witness_annihilates", {"element": [0, str(q)]})
                symbolic += 1
            continue
        # For a nonzero base component neither ideal depends on the module
        # component; verify that explicitly for every q instead of redoing
        # the witness assertions with identical inputs.
        wn, wq = te_morphic_witness(n, zero)
        principal = te_principal_ideal(n, zero)
        ann = te_left_annihilator(n, zero)
        for q in fracs:
            if te_principal_ideal(n, q) != principal or te_left_annihilator(n, q) != ann:
                return fail("base_dominates", {"element": [n, str(q)]})
            if te_product(n, q, wn, wq) != (0, zero):
                return fail("witness_annihilates", {"element": [n, str(q)]})
            symbolic += 1

    inner = min(bound, 5)
    concrete = 0
    for n in range(-inner, inner + 1):
        for q in _module_fracs(inner):
            c = q.den
            grid = 4 * lcm(max(abs(n), 1), c)
            qnum = q.num * (grid // c)
            span = 2 * inner
            ann = te_left_annihilator(n, q)
            principal = te_principal_ideal(n, q)
            for r in range(-span, span + 1):
                for v in range(grid):
                    prod_base = r * n
                    prod_v = (r * qnum + v * n) % grid
                    annihilates = prod_base == 0 and prod_v == 0
                    if annihilates != ann.contains(r, QFrac(v, grid)):
                        return fail("annihilator_grid", {
                            "element": [n, str(q)], "pair": [r, f"{v}/{grid}"]})
                    if not principal.contains(prod_base, QFrac(prod_v, grid)):
                        return fail("principal_membership", {
                            "element": [n, str(q)], "pair": [r, f"{v}/{grid}"]})
            if n != 0:
                for t in range(-2, 3):
                    for v in range(grid):
                        m = QFrac(v - t * (qnum if n > 0 else -qnum), grid * n)
                        got = te_product(t if n > 0 else -t, m, n, q)
                        if got != (t * abs(n), QFrac(v, grid)):
                            return fail("principal_coverage", {
                                "element": [n, str(q)], "target": [t * abs(n), f"{v}/{grid}"]})
            elif not q.is_zero:
                for k in range(c):
                    got = te_product(k, QFrac(0, 1), n, q)
                    if got != (0, q.scale(k)):
                        return fail("principal_coverage", {
                            "element": [n, str(q)], "target": k})
            concrete += 1

    details = {
        "bound": bound,
        "pairs": pairs,
        "generator_checks": generator_checks,
        "symbolic_witnesses": symbolic,
        "concrete_grids": concrete,
    }
    return VerificationReport("quotient_module_lattice", expression,
                              "verified", details, time.perf_counter() - start)
