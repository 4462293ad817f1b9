"""Subdivision schemes for the middle-third Cantor set and its right half.

Two constructions are implemented.

* The standard one: at level n the surviving set K_n is the union of the 2^n
  triadic cells [m/3^n, (m+1)/3^n] whose numerator m has no digit 1 in base 3.
  The Cantor set C is the intersection of all K_n, and R = C meet [2/3, 1] is
  its right half.

* A faster-converging one driven by the gap family

      B = (1/3, 2/3)  u  U_{k>=1} (1/3^{k+1}, 2/3^{k+1})
                      u  U_{k>=1} (1 - 2/3^{k+1}, 1 - 1/3^{k+1}),

  rescaled into every surviving cell at each round.  Removing A_I(B) from a
  cell I leaves a scaled copy of the construction near each endpoint of I; the
  surviving cells of one round are

      E_k = A_I([2/3^{k+1}, 1/3^k])   (low side,  k >= 1)
      F_k = A_I([1 - 1/3^k, 1 - 2/3^{k+1}])   (high side, k >= 1),

  each of length |I|/3^{k+1}.  Infinitely many cells appear per round, so a
  truncation policy keeps only k <= K and brackets the rest: the outer set
  keeps the two hull pieces A_I([0, 3^{-K-1}]) and A_I([1 - 3^{-K-1}, 1]) of
  every subdivided cell (they contain all discarded cells), the inner set
  keeps tracked cells only.  Both brackets are exact: inner <= D_n <= outer.

Each tracked cell carries, besides its triadic address (m, k), the integer
q = left endpoint / length, the quantity all the gap-ordering arithmetic runs
on.  For triadic cells q equals m; the two are updated through independent
recursions and cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping

from .intervals import Interval, IntervalSet, rat

RIGHT_HALF = Interval(Fraction(2, 3), Fraction(1))


@dataclass(frozen=True)
class TriadicInterval:
    """The cell [m/3^k, (m+1)/3^k] inside [0, 1]."""

    m: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("triadic level must be >= 0")
        if not 0 <= self.m < 3**self.k:
            raise ValueError(f"numerator {self.m} out of range for level {self.k}")

    @property
    def interval(self) -> Interval:
        den = 3**self.k
        return Interval(Fraction(self.m, den), Fraction(self.m + 1, den))

    @property
    def length(self) -> Fraction:
        return Fraction(1, 3**self.k)


def standard_cells(n: int) -> Iterator[TriadicInterval]:
    """Cells of the level-n standard subdivision of [0, 1], left to right."""
    if n < 0:
        raise ValueError("level must be >= 0")
    ms = [0]
    for _ in range(n):
        ms = [d for m in ms for d in (3 * m, 3 * m + 2)]
    for m in ms:
        yield TriadicInterval(m, n)


def standard_subdivision(n: int) -> IntervalSet:
    """K_n: what remains of [0, 1] after n rounds of middle-third removal."""
    return IntervalSet(cell.interval for cell in standard_cells(n))


def right_half_cells(n: int) -> Iterator[TriadicInterval]:
    """Cells of K_n meet [2/3, 1]: the ones whose leading ternary digit is 2."""
    if n == 0:
        yield TriadicInterval(2, 1)
        return
    for cell in standard_cells(n):
        if cell.m >= 2 * 3 ** (n - 1):
            yield cell


def right_half_subdivision(n: int) -> IntervalSet:
    """R_n: level-n standard cover of the right half of the Cantor set."""
    return IntervalSet(cell.interval for cell in right_half_cells(n))


def gap_set(K: int) -> IntervalSet:
    """The gap family B truncated at index K, as a subset of [0, 1].

    Contains the central gap plus the K nearest side gaps at each end;
    measure 2/3 - 1/3^(K+1).
    """
    if K < 0:
        raise ValueError("gap index bound must be >= 0")
    gaps = [Interval(Fraction(1, 3), Fraction(2, 3))]
    for k in range(1, K + 1):
        den = 3 ** (k + 1)
        gaps.append(Interval(Fraction(1, den), Fraction(2, den)))
        gaps.append(Interval(Fraction(den - 2, den), Fraction(den - 1, den)))
    return IntervalSet(gaps)


@dataclass(frozen=True)
class FastNode:
    """A surviving cell of the fast subdivision.

    m, k address the triadic cell [m/3^k, (m+1)/3^k]; q is the cell's left
    endpoint divided by its length, tracked by its own recursion.  For genuine
    cells q == m; synthetic nodes may break that on purpose.
    """

    m: int
    k: int
    q: int
    depth: int

    @property
    def cell(self) -> Interval:
        return TriadicInterval(self.m, self.k).interval

    @property
    def length(self) -> Fraction:
        return Fraction(1, 3**self.k)

    def to_json(self) -> Mapping[str, str]:
        return {"m": str(self.m), "k": str(self.k), "q": str(self.q), "depth": str(self.depth)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "FastNode":
        return cls(m=int(data["m"]), k=int(data["k"]), q=int(data["q"]), depth=int(data["depth"]))


ROOT = FastNode(m=2, k=1, q=2, depth=0)


def node_child(node: FastNode, k: int, high_side: bool) -> FastNode:
    """The k-th surviving child cell of `node`, on the low or high side.

    Both the triadic address and q follow the same affine bookkeeping:
    low side  E_k: new m = 3^(k+1) m + 2,        length shrinks by 3^(k+1);
    high side F_k: new m = 3^(k+1) (m + 1) - 3.
    """
    if k < 1:
        raise ValueError("child index must be >= 1")
    scale = 3 ** (k + 1)
    if high_side:
        m = scale * (node.m + 1) - 3
        q = scale * (node.q + 1) - 3
    else:
        m = scale * node.m + 2
        q = scale * node.q + 2
    return FastNode(m=m, k=node.k + k + 1, q=q, depth=node.depth + 1)


def node_children(node: FastNode, K: int) -> tuple[FastNode, ...]:
    """All tracked children (k <= K on both sides), ordered left to right."""
    if K < 1:
        raise ValueError("child index bound must be >= 1")
    low = [node_child(node, k, high_side=False) for k in range(K, 0, -1)]
    high = [node_child(node, k, high_side=True) for k in range(1, K + 1)]
    return tuple(low + high)


@dataclass(frozen=True)
class TruncationPolicy:
    """How many children to track per cell per round (k <= gap_depth)."""

    gap_depth: int

    def __post_init__(self) -> None:
        if self.gap_depth < 1:
            raise ValueError("gap_depth must be >= 1")


@dataclass(frozen=True)
class FastSubdivision:
    """Result of n rounds of truncated fast subdivision of [2/3, 1].

    inner and outer bracket the true surviving set D_n:
    inner is the union of tracked depth-n cells (all genuine cells of D_n),
    outer additionally keeps the hull pieces of every subdivided cell, which
    contain every cell the truncation discarded.
    """

    n: int
    policy: TruncationPolicy
    inner: IntervalSet
    outer: IntervalSet
    nodes: tuple[FastNode, ...]


def _hull_tails(node: FastNode, K: int) -> tuple[Interval, Interval]:
    scale = 3 ** (K + 1)
    den = 3 ** (node.k + K + 1)
    lo = Interval(Fraction(node.m * scale, den), Fraction(node.m * scale + 1, den))
    hi = Interval(Fraction((node.m + 1) * scale - 1, den), Fraction((node.m + 1) * scale, den))
    return lo, hi


def fast_subdivision(n: int, policy: TruncationPolicy) -> FastSubdivision:
    """Run n truncated rounds starting from [2/3, 1]."""
    if n < 0:
        raise ValueError("round count must be >= 0")
    K = policy.gap_depth
    if (2 * K) ** n > 500_000:
        raise ValueError(f"refusing to track (2*{K})^{n} cells")
    level: list[FastNode] = [ROOT]
    tails: list[Interval] = []
    for _ in range(n):
        for node in level:
            tails.extend(_hull_tails(node, K))
        level = [child for node in level for child in node_children(node, K)]
    cells = [node.cell for node in level]
    return FastSubdivision(
        n=n,
        policy=policy,
        inner=IntervalSet(cells),
        outer=IntervalSet(cells + tails),
        nodes=tuple(level),
    )


def removed_gaps(n: int, policy: TruncationPolicy) -> IntervalSet:
    """Union of all gap intervals deleted during n rounds of fast subdivision."""
    if n < 0:
        raise ValueError("round count must be >= 0")
    K = policy.gap_depth
    base = gap_set(K)
    level: list[FastNode] = [ROOT]
    gaps: list[Interval] = []
    for _ in range(n):
        for node in level:
            gaps.extend(base.affine_image(node.cell))
        level = [child for node in level for child in node_children(node, K)]
    return IntervalSet(gaps)


def squared_length_sum(n: int, policy: TruncationPolicy) -> tuple[Fraction, Fraction]:
    """(sum of |cell|^2 over tracked depth-n cells, its K -> infinity limit).

    The limit is (1/9) (1/36)^n: each round multiplies the squared-length sum
    of a cell by 2 sum_{k>=1} 9^(-k-1) = 1/36.
    """
    sub = fast_subdivision(n, policy)
    truncated = sum((node.length**2 for node in sub.nodes), Fraction(0))
    limit = Fraction(1, 9) * Fraction(1, 36) ** n
    return truncated, limit


class Membership(Enum):
    MEMBER = "member"
    NON_MEMBER = "non_member"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TernaryExpansion:
    """Base-3 digits of a number in [0, 1], with cycle structure.

    period == 0 means the expansion terminates after the recorded digits;
    otherwise the last `period` recorded digits repeat forever.  complete is
    False only when the digit budget ran out before the cycle closed.
    """

    digits: tuple[int, ...]
    period: int
    complete: bool

    @property
    def preperiod(self) -> int:
        return len(self.digits) - self.period

    def __str__(self) -> str:
        head = "".join(str(d) for d in self.digits[: self.preperiod])
        if self.period:
            tail = "".join(str(d) for d in self.digits[self.preperiod :])
            return f"0.{head}({tail})*"
        if not self.complete:
            return f"0.{head}..."
        return f"0.{head}" if self.digits else "0"


def ternary_expansion(x: Fraction, max_digits: int = 4096) -> TernaryExpansion:
    """Expand x in [0, 1] in base 3 by long division, detecting the cycle."""
    x = rat(x)
    if not 0 <= x <= 1:
        raise ValueError(f"expected a number in [0, 1], got {x}")
    if x == 1:
        return TernaryExpansion(digits=(2,), period=1, complete=True)
    rem, den = x.numerator, x.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    while rem and len(digits) < max_digits:
        if rem in seen:
            start = seen[rem]
            return TernaryExpansion(tuple(digits), period=len(digits) - start, complete=True)
        seen[rem] = len(digits)
        rem *= 3
        d, rem = divmod(rem, den)
        digits.append(d)
    return TernaryExpansion(tuple(digits), period=0, complete=(rem == 0))


def classify_ternary(x: Fraction, max_digits: int = 4096) -> tuple[Membership, TernaryExpansion]:
    """Decide Cantor-set membership of x in [0, 1] from its ternary digits.

    A digit 1 followed by anything nonzero puts x strictly inside a removed
    gap.  A trailing digit 1 is the left endpoint of a gap and stays in the
    set (rewrite ...1 as ...0222...).  Rationals always resolve within one
    remainder cycle, so UNDETERMINED can only happen when max_digits is
    smaller than the cycle.
    """
    exp = ternary_expansion(x, max_digits)
    for pos, d in enumerate(exp.digits):
        if d == 1:
            terminal = exp.period == 0 and exp.complete and pos == len(exp.digits) - 1
            return (Membership.MEMBER if terminal else Membership.NON_MEMBER), exp
    if not exp.complete:
        return Membership.UNDETERMINED, exp
    return Membership.MEMBER, exp


def cantor_membership(x: Fraction, max_digits: int = 4096) -> Membership:
    """Membership of x in the middle-third Cantor set (exact for rationals)."""
    verdict, _ = classify_ternary(x, max_digits)
    return verdict
