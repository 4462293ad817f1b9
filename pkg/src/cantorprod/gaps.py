"""Gap calculus: the exact bookkeeping behind the certified measure values.

For a cell I = [A(0), A(1)] (A(x) = |I| (q + x), q = left endpoint over
length), products of pieces of I organize into three interval families per
side and index k:

* p_interval: the band of products between opposite side pieces of I, e.g.
  on the low side P(I(2/3^{k+1}, 3^-k) x I(0, 3^-k-1));
* q_interval: the square of the k-th surviving child cell with itself;
* g_interval: the gap punched over the diagonal by the child's middle
  removal, P(J x J) minus P(J'' x J'') for the side piece J = I_(k,+-),
  an interval of length (|I| / 3^{k+1})^2 ending at A(.)^2.

The point of the whole section: these intervals interleave in a fixed order
(verify_order_chain), bands of a parent swallow most gaps of its children
(the covering thresholds), and what is not swallowed has an exactly summable
measure (truncated_gap_sum, beta, alpha).  Accumulating the swallowed-or-not
accounting over three subdivision rounds yields a certified enclosure of the
product-set measure, reproduced here entry by entry from first principles
and compared against frozen expected literals.

All series are evaluated exactly: explicit partial sums plus closed
geometric tails, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .intervals import Interval, decimal_string, format_rational
from .subdivision import ROOT, FastNode, node_child

TARGET_LEVEL3 = "prop3"  # enclosure of measure(P(D_3 x D_3)), opaque CLI token
TARGET_FULL = "theorem"  # enclosure of measure(P(C x C)), opaque CLI token
TARGETS = (TARGET_LEVEL3, TARGET_FULL)


class CertificationError(Exception):
    """A certified identity failed to verify."""


# ---------------------------------------------------------------------------
# cell geometry driven by (q, k): everything is a product of scaled points


def scaled_point(node: FastNode, x: Fraction) -> Fraction:
    """A(x) = (q + x) / 3^k, the affine parametrization of the node's cell."""
    return (node.q + Fraction(x)) / 3**node.k


def side_piece(node: FastNode, k: int, high_side: bool) -> Interval:
    """The closed outer third piece I_(k,-) = I(0, 3^-k) or I_(k,+); k = 0 is I itself."""
    if k < 0:
        raise ValueError("side index must be >= 0")
    t = Fraction(1, 3**k)
    if high_side:
        return Interval(scaled_point(node, 1 - t), scaled_point(node, 1))
    return Interval(scaled_point(node, 0), scaled_point(node, t))


def child_cell(node: FastNode, k: int, high_side: bool) -> Interval:
    """The k-th surviving child cell as an interval (geometric route).

    Must agree with node_child(node, k, high_side).cell for genuine cells;
    this version works off (q, k) alone, so it extends to synthetic nodes.
    """
    if k < 1:
        raise ValueError("child index must be >= 1")
    lo = Fraction(2, 3 ** (k + 1))
    hi = Fraction(1, 3**k)
    if high_side:
        return Interval(scaled_point(node, 1 - hi), scaled_point(node, 1 - lo))
    return Interval(scaled_point(node, lo), scaled_point(node, hi))


def diagonal_gap(piece: Interval) -> Interval:
    """P(J x J) minus P(J'' x J'') for J = [a, a+3t] with middle third removed.

    The products (a+t)(a+3t) = (a+2t)^2 - t^2 and (a+t)^2 > a(a+2t) leave
    exactly the open slot ((a+2t)^2 - t^2, (a+2t)^2), an interval of length
    t^2 just below the square of the removed gap's right endpoint.
    """
    t = piece.length / 3
    hi = (piece.lo + 2 * t) ** 2
    return Interval(hi - t * t, hi)


def p_interval(node: FastNode, k: int, high_side: bool) -> Interval:
    """Band of products between the node's opposite side pieces at index k."""
    if k < 0:
        raise ValueError("band index must be >= 0")
    s = Fraction(1, 3**k)
    t = Fraction(1, 3 ** (k + 1))
    if high_side:
        lo = scaled_point(node, 1 - t) * scaled_point(node, 1 - s)
        hi = scaled_point(node, 1) * scaled_point(node, 1 - 2 * t)
    else:
        lo = scaled_point(node, 2 * t) * scaled_point(node, 0)
        hi = scaled_point(node, s) * scaled_point(node, t)
    return Interval(lo, hi)


def q_interval(node: FastNode, k: int, high_side: bool) -> Interval:
    """Square of the k-th child cell: P(cell x cell) = [lo^2, hi^2]."""
    cell = child_cell(node, k, high_side)
    return Interval(cell.lo**2, cell.hi**2)


def g_interval(node: FastNode, k: int, high_side: bool) -> Interval:
    """The index-k diagonal gap of the node, on the low or high side.

    Equals diagonal_gap(side_piece(node, k, high_side)); length |I|^2 / 9^{k+1}.
    Both sides agree at k = 0.
    """
    if k < 0:
        raise ValueError("gap index must be >= 0")
    t = Fraction(1, 3 ** (k + 1)) / 3**node.k
    if high_side:
        edge = scaled_point(node, 1 - Fraction(1, 3 ** (k + 1)))
    else:
        edge = scaled_point(node, Fraction(2, 3 ** (k + 1)))
    return Interval(edge**2 - t * t, edge**2)


def compare_products(node: FastNode, x: Fraction, y: Fraction, z: Fraction, t: Fraction) -> int:
    """Sign of A(x)A(y) - A(z)A(t) via the integer-friendly predicate.

    A(x)A(y) > A(z)A(t)  iff  zt - xy < q (x + y - z - t); the cell length
    cancels, so only q and the local coordinates enter.
    """
    x, y, z, t = Fraction(x), Fraction(y), Fraction(z), Fraction(t)
    lhs = z * t - x * y
    rhs = node.q * (x + y - z - t)
    if lhs < rhs:
        return 1
    if lhs == rhs:
        return 0
    return -1


# ---------------------------------------------------------------------------
# the interleaving order of the three families


@dataclass(frozen=True)
class ChainCheck:
    name: str
    k: int
    holds: bool
    lhs: Fraction
    rhs: Fraction
    relation: str  # "eq", "lt", "le"


def _check(name: str, k: int, lhs: Fraction, rhs: Fraction, relation: str) -> ChainCheck:
    if relation == "eq":
        holds = lhs == rhs
    elif relation == "lt":
        holds = lhs < rhs
    elif relation == "le":
        holds = lhs <= rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return ChainCheck(name=name, k=k, holds=holds, lhs=lhs, rhs=rhs, relation=relation)


def verify_order_chain(node: FastNode, k_max: int) -> tuple[ChainCheck, ...]:
    """Check the interleaving of gap, square, and band intervals up to k_max.

    Nothing is assumed about the node: every relation is evaluated and
    reported, so a synthetic node that breaks the order (q = 0 breaks
    square_starts_below_band_low) is flagged rather than crashing.  For
    genuine cells (q >= 2, in fact any q >= 1) all relations hold.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    checks: list[ChainCheck] = []
    for k in range(k_max):
        g_next = g_interval(node, k + 1, high_side=False)
        q_next = q_interval(node, k + 1, high_side=False)
        p_cur = p_interval(node, k, high_side=False)
        g_cur = g_interval(node, k, high_side=False)
        g_cur_hi = g_interval(node, k, high_side=True)
        q_next_hi = q_interval(node, k + 1, high_side=True)
        checks.append(_check("gap_square_touch_low", k + 1, g_next.hi, q_next.lo, "eq"))
        checks.append(_check("square_starts_below_band_low", k, q_next.lo, p_cur.lo, "lt"))
        checks.append(_check("band_enters_square_low", k, p_cur.lo, q_next.hi, "lt"))
        checks.append(_check("square_ends_inside_band_low", k, q_next.hi, p_cur.hi, "lt"))
        checks.append(_check("band_touches_gap_low", k, p_cur.hi, g_cur.lo, "eq"))
        checks.append(_check("gap_nonempty_low", k, g_cur.lo, g_cur.hi, "lt"))
        checks.append(_check("gap_low_before_high", k, g_cur.hi, g_cur_hi.hi, "le"))
        checks.append(_check("gap_square_touch_high", k, g_cur_hi.hi, q_next_hi.lo, "eq"))
    for k in range(1, k_max + 1):
        q_cur = q_interval(node, k, high_side=True)
        p_cur = p_interval(node, k, high_side=True)
        g_cur = g_interval(node, k, high_side=True)
        checks.append(_check("square_starts_below_band_high", k, q_cur.lo, p_cur.lo, "lt"))
        checks.append(_check("band_enters_square_high", k, p_cur.lo, q_cur.hi, "lt"))
        checks.append(_check("square_ends_inside_band_high", k, q_cur.hi, p_cur.hi, "lt"))
        checks.append(_check("band_touches_gap_high", k, p_cur.hi, g_cur.lo, "eq"))
        checks.append(_check("gap_nonempty_high", k, g_cur.lo, g_cur.hi, "lt"))
    return tuple(checks)


def chain_holds(checks: Iterable[ChainCheck]) -> bool:
    return all(c.holds for c in checks)


# ---------------------------------------------------------------------------
# covering thresholds: which child gaps a parent band swallows


def low_cover_threshold(q: int, k: int) -> int:
    """Least l such that the low child E_k's high gaps with index >= l are
    covered by the parent band p_interval(., k-1, low).

    Containment reduces to 3^{l+2} > 2 * 3^k * q + 2; since the right side is
    never a power of 3 (it is 2 mod 3), partial covering cannot occur: the
    band boundary never lands strictly inside a gap.
    """
    if k < 1:
        raise ValueError("child index must be >= 1")
    if q < 1:
        raise ValueError("threshold needs q >= 1")
    bound = 2 * 3**k * q + 2
    l = 0
    power = 9  # 3^{l+2}
    while power <= bound:
        l += 1
        power *= 3
    return l


def high_cover_threshold(q: int, k: int) -> int:
    """Least l such that the high child F_k's high gaps with index >= l are
    covered by the parent band p_interval(., k, high).

    Containment reduces to 3^{l+1} > 2 * 3^{k+1} * (q + 1) - 4, again with no
    partial covering (the right side is 2 mod 3).
    """
    if k < 1:
        raise ValueError("child index must be >= 1")
    if q < 1:
        raise ValueError("threshold needs q >= 1")
    bound = 2 * 3 ** (k + 1) * (q + 1) - 4
    l = 0
    power = 3  # 3^{l+1}
    while power <= bound:
        l += 1
        power *= 3
    return l


def child_gap_covered(parent: FastNode, k: int, l: int, high_child: bool) -> bool:
    """Geometric route: is the l-th high-side gap of the k-th child strictly
    inside the matching parent band?  Must agree with the thresholds."""
    child = node_child(parent, k, high_side=high_child)
    gap = g_interval(child, l, high_side=True)
    if high_child:
        band = p_interval(parent, k, high_side=True)
    else:
        band = p_interval(parent, k - 1, high_side=False)
    return band.lo < gap.lo and gap.hi < band.hi


# ---------------------------------------------------------------------------
# exact series: measures of what the bands do not swallow


def geometric_series(first: Fraction, ratio: Fraction) -> Fraction:
    """Exact sum of first * ratio^j over j >= 0, for 0 <= ratio < 1."""
    if not 0 <= ratio < 1:
        raise ValueError("ratio must be in [0, 1)")
    return first / (1 - ratio)


def gap_total(length: Fraction) -> Fraction:
    """Total measure of all diagonal gaps of a cell of the given length.

    One central gap of measure length^2/9 plus two per index k >= 1 of
    measure length^2/9^{k+1} each: (5/36) length^2, assembled exactly.
    """
    sq = Fraction(length) ** 2
    return sq / 9 + 2 * geometric_series(sq / 81, Fraction(1, 9))


def truncated_gap_sum(length: Fraction, uncovered: int) -> Fraction:
    """Measure of a cell's gaps left after covering high gaps of index >= uncovered.

    All low-side gaps plus the high-side gaps of index < uncovered (index 0 is
    the central gap, counted once): (length^2 / 8)(10/9 - 9^-uncovered).
    """
    if uncovered < 0:
        raise ValueError("uncovered count must be >= 0")
    sq = Fraction(length) ** 2
    return sq / 8 * (Fraction(10, 9) - Fraction(1, 9**uncovered))


def truncated_gap_sum_series(length: Fraction, uncovered: int, cut: int = 8) -> Fraction:
    """Same value as truncated_gap_sum by explicit partial sum plus tail."""
    sq = Fraction(length) ** 2
    low = sum(sq / 9 ** (l + 1) for l in range(1, cut + 1))
    low += geometric_series(sq / 9 ** (cut + 2), Fraction(1, 9))
    high = sum(sq / 9 ** (l + 1) for l in range(uncovered))
    return low + high


def first_level_gap_total() -> Fraction:
    """Measure removed from P(D_0 x D_0) by the first round: every gap of the
    root cell [2/3, 1] survives, total (5/36)(1/3)^2 = 5/324."""
    return gap_total(ROOT.length)


def _verified_low_threshold(q: int, k: int, expected: int) -> int:
    got = low_cover_threshold(q, k)
    if got != expected:
        raise CertificationError(
            f"low covering threshold pattern broke at q={q}, k={k}: {got} != {expected}"
        )
    return got


def _verified_high_threshold(q: int, k: int, expected: int) -> int:
    got = high_cover_threshold(q, k)
    if got != expected:
        raise CertificationError(
            f"high covering threshold pattern broke at q={q}, k={k}: {got} != {expected}"
        )
    return got


def second_level_increment(cut: int = 12) -> Fraction:
    """Measure removed by round two that round one's bands do not cover.

    Children of the root are E_k, F_k of length 3^-(k+2); the uncovered count
    is the covering threshold (k for E_k, k+2 for F_k), verified here over the
    partial range before the matching geometric tails are attached.
    """
    total = Fraction(0)
    for k in range(1, cut + 1):
        length = Fraction(1, 3 ** (k + 2))
        total += truncated_gap_sum(length, _verified_low_threshold(ROOT.q, k, k))
        total += truncated_gap_sum(length, _verified_high_threshold(ROOT.q, k, k + 2))
    # tails of the two series for k > cut, from the expanded closed form
    # tg(3^-(k+2), k)   = (10/72) 9^-(k+2) - (1/8) 9^-(2k+2)
    # tg(3^-(k+2), k+2) = (10/72) 9^-(k+2) - (1/8) 9^-(2k+4)
    total += 2 * geometric_series(Fraction(10, 72) / 9 ** (cut + 3), Fraction(1, 9))
    total -= geometric_series(Fraction(1, 8) / 9 ** (2 * cut + 4), Fraction(1, 81))
    total -= geometric_series(Fraction(1, 8) / 9 ** (2 * cut + 6), Fraction(1, 81))
    return total


def beta(k: int) -> Fraction:
    """Closed form for the uncovered gap measure of the high child F_k's children.

    (1/64) [ 20/9^{k+4} - (91/5)/9^{2k+6} + (1/10)/9^{4k+10} ].
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    return (
        Fraction(20, 9 ** (k + 4))
        - Fraction(91, 5) / 9 ** (2 * k + 6)
        + Fraction(1, 10) / 9 ** (4 * k + 10)
    ) / 64


def beta_series(k: int, cut: int = 12) -> Fraction:
    """Independent evaluation of beta(k): per-child truncated sums plus tails.

    F_k has parameter q = 3^{k+2} - 3 (re-derived through the child
    recursion); its grandchildren of index m have length 3^-(k+m+3) and
    uncovered counts m+k+1 (low side, all m) and m+k+3 (high side, only
    m <= k+2: deeper high grandchildren sit entirely inside the round-one
    band and contribute nothing).
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    f_k = node_child(ROOT, k, high_side=True)
    total = Fraction(0)
    for m in range(1, cut + 1):
        length = Fraction(1, 3 ** (k + m + 3))
        total += truncated_gap_sum(length, _verified_low_threshold(f_k.q, m, m + k + 1))
    # low-side tail for m > cut:
    # tg(3^-(k+m+3), m+k+1) = (10/72) 9^-(k+m+3) - (1/8) 9^-(2k+2m+4)
    total += geometric_series(Fraction(10, 72) / 9 ** (k + cut + 4), Fraction(1, 9))
    total -= geometric_series(Fraction(1, 8) / 9 ** (2 * k + 2 * cut + 6), Fraction(1, 81))
    for m in range(1, k + 3):
        length = Fraction(1, 3 ** (k + m + 3))
        total += truncated_gap_sum(length, _verified_high_threshold(f_k.q, m, m + k + 3))
    return total


def _excluded_child_correction(k: int) -> Fraction:
    """High-side terms m = k, k+1, k+2 that beta counts but alpha must not."""
    return sum(
        truncated_gap_sum(Fraction(1, 3 ** (2 * k + j)), 2 * k + j) for j in (3, 4, 5)
    )


def alpha(k: int) -> Fraction:
    """Closed form for the uncovered gap measure of the low child E_k's
    children, excluding the special high grandchild of index m = k (whose
    square escapes the bands and is accounted separately).

    Same series as beta except the high-side sum stops at m = k-1: the terms
    m = k, k+1, k+2 drop out, each a truncated gap sum at scale 3^-(2k+j).
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    return beta(k) - _excluded_child_correction(k)


def alpha_series(k: int, cut: int = 12) -> Fraction:
    """Independent evaluation of alpha(k), mirroring beta_series.

    E_k has parameter q = 2*3^{k+1} + 2; thresholds match F_k's pattern
    (m+k+1 low, m+k+3 high), but high grandchildren with m >= k+1 are fully
    covered and m = k is excluded, leaving m <= k-1.
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    e_k = node_child(ROOT, k, high_side=False)
    total = Fraction(0)
    for m in range(1, cut + 1):
        length = Fraction(1, 3 ** (k + m + 3))
        total += truncated_gap_sum(length, _verified_low_threshold(e_k.q, m, m + k + 1))
    total += geometric_series(Fraction(10, 72) / 9 ** (k + cut + 4), Fraction(1, 9))
    total -= geometric_series(Fraction(1, 8) / 9 ** (2 * k + 2 * cut + 6), Fraction(1, 81))
    for m in range(1, k):
        length = Fraction(1, 3 ** (k + m + 3))
        total += truncated_gap_sum(length, _verified_high_threshold(e_k.q, m, m + k + 3))
    return total


def deep_series_total() -> tuple[Fraction, Fraction]:
    """(sum over k >= 1 of beta(k) + alpha(k), the remainder epsilon).

    Per k: beta + alpha = (1/8)[ 5/9^{k+4} - (910 + 91/20)/9^{2k+6}
    + (265721/40)/9^{4k+10} ]; summing the three geometric strands exactly
    and splitting off epsilon = (1/8)[ (91/20) sum 9^-(2k+6)
    - (265721/40) sum 9^-(4k+10) ] leaves the round number
    sum + epsilon = 157/(32 * 9^6).
    """
    sum_a = geometric_series(Fraction(1, 9**5), Fraction(1, 9))
    sum_b = geometric_series(Fraction(1, 9**8), Fraction(1, 81))
    sum_c = geometric_series(Fraction(1, 9**14), Fraction(1, 9**4))
    total = (
        5 * sum_a - (910 + Fraction(91, 20)) * sum_b + Fraction(265721, 40) * sum_c
    ) / 8
    epsilon = (Fraction(91, 20) * sum_b - Fraction(265721, 40) * sum_c) / 8
    return total, epsilon


def unresolved_cells_bound() -> Fraction:
    """Upper bound on the gap measure of the escaped squares with k >= 2.

    Each escaped grandchild has length 3^-(2k+3); summing their full gap
    totals (5/36) 9^-(2k+3) over k >= 2 gives exactly 1/(64 * 9^6).
    """
    return Fraction(5, 36) * geometric_series(Fraction(1, 9**7), Fraction(1, 81))


@dataclass(frozen=True)
class RemovedMeasures:
    """Measure removed from P(D_0 x D_0) after 1, 2, and 3 rounds (mu values);
    round three is an exact bracket, not a point value."""

    mu1: Fraction
    mu2: Fraction
    mu3_lower: Fraction
    mu3_upper: Fraction


def removed_measure_chain() -> RemovedMeasures:
    mu1 = first_level_gap_total()
    mu2 = mu1 + second_level_increment()
    e1 = node_child(ROOT, 1, high_side=False)
    d1p = node_child(e1, 1, high_side=True)
    gamma1 = truncated_gap_sum(d1p.length, high_cover_threshold(e1.q, 1))
    deep, _ = deep_series_total()
    lower = mu2 + gamma1 + deep
    return RemovedMeasures(
        mu1=mu1, mu2=mu2, mu3_lower=lower, mu3_upper=lower + unresolved_cells_bound()
    )


# ---------------------------------------------------------------------------
# certificates

P6 = 9**6
P10 = 9**10

# Frozen expected values for every chain entry.  certify() re-derives each
# value from the series and geometry above and compares against this table;
# tampering with either side must flip the matching entry to False.
EXPECTED: dict[str, Fraction] = {
    "level1_gap_total": Fraction(5, 324),
    "level2_gap_increment": Fraction(859, 2099520),
    "band_floor": Fraction(16, 27),
    "special_cell_separation": Fraction(16, 27),
    "special_cell_length": Fraction(1, 243),
    "special_cell_gap_threshold": Fraction(5),
    "special_cell_gap_total": Fraction(5, 4 * P6) - Fraction(1, 8 * P10),
    "deep_series_total": Fraction(157, 32 * P6),
    "series_remainder_positive": Fraction(0),
    "series_remainder_bound": Fraction(1, 128 * P6),
    "unresolved_cells_bound": Fraction(1, 64 * P6),
    "level3_center": Fraction(91782451, 170061120),
    "enclosure_shift_positive": Fraction(0),
    "enclosure_shift_bound": Fraction(1, 64 * P6),
    "full_center": Fraction(91782451, 113374080),
    "subdivision_tail": Fraction(1, 2939328),
    "full_radius": Fraction(11, 19840464),
    "full_radius_tolerance": Fraction(1, 10**6),
}


@dataclass(frozen=True)
class ChainEntry:
    name: str
    value: Fraction
    expected: Fraction
    relation: str  # "eq", "lt", "gt"
    match: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "value": format_rational(self.value),
            "expected": format_rational(self.expected),
            "relation": self.relation,
            "match": self.match,
        }


@dataclass(frozen=True)
class Certificate:
    target: str
    center: Fraction
    radius: Fraction
    chain: tuple[ChainEntry, ...]

    @property
    def ok(self) -> bool:
        return all(entry.match for entry in self.chain)

    def failures(self) -> tuple[ChainEntry, ...]:
        return tuple(entry for entry in self.chain if not entry.match)

    def to_json(self, digits: int = 12) -> dict:
        return {
            "target": self.target,
            "center": format_rational(self.center),
            "radius": format_rational(self.radius),
            "decimal_center": decimal_string(self.center, digits),
            "verified": self.ok,
            "chain": [entry.to_json() for entry in self.chain],
        }


def certify(target: str = TARGET_LEVEL3) -> Certificate:
    """Re-derive the measure enclosure and compare every step to its frozen value.

    The level-3 target encloses measure(P(D_3 x D_3)); the full target scales
    it to the Cantor product set, folding in the subdivision tail.  Entries
    appear in dependency order; center and radius are taken from the derived
    values, not the frozen table.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown certification target {target!r}")
    entries: list[ChainEntry] = []

    def add(name: str, value: Fraction, relation: str = "eq") -> Fraction:
        expected = EXPECTED[name]
        if relation == "eq":
            match = value == expected
        elif relation == "lt":
            match = value < expected
        elif relation == "gt":
            match = value > expected
        else:
            raise ValueError(f"unknown relation {relation!r}")
        entries.append(ChainEntry(name, value, expected, relation, match))
        return value

    mu1 = add("level1_gap_total", first_level_gap_total())
    increment = add("level2_gap_increment", second_level_increment())

    e1 = node_child(ROOT, 1, high_side=False)
    d1p = node_child(e1, 1, high_side=True)
    add("band_floor", p_interval(ROOT, 0, high_side=False).lo)
    # the special cell's square sits strictly below the round-one band, so its
    # own gaps survive in full up to the covering threshold
    add("special_cell_separation", q_interval(e1, 1, high_side=True).hi, relation="lt")
    add("special_cell_length", d1p.length)
    threshold = high_cover_threshold(e1.q, 1)
    add("special_cell_gap_threshold", Fraction(threshold))
    gamma1 = add("special_cell_gap_total", truncated_gap_sum(d1p.length, threshold))

    deep, epsilon = deep_series_total()
    add("deep_series_total", deep + epsilon)
    add("series_remainder_positive", epsilon, relation="gt")
    add("series_remainder_bound", epsilon, relation="lt")
    radius = add("unresolved_cells_bound", unresolved_cells_bound())

    removed = mu1 + increment + gamma1 + deep + epsilon
    shift = Fraction(1, 8 * P10) + epsilon
    center = add("level3_center", Fraction(5, 9) - removed - Fraction(1, 8 * P10))
    add("enclosure_shift_positive", shift, relation="gt")
    add("enclosure_shift_bound", shift, relation="lt")

    if target == TARGET_LEVEL3:
        return Certificate(target=target, center=center, radius=radius, chain=tuple(entries))

    full_center = add("full_center", Fraction(3, 2) * center)
    tail = add("subdivision_tail", Fraction(1, 63) * Fraction(1, 36) ** 3)
    full_radius = add("full_radius", Fraction(3, 2) * (radius + tail))
    add("full_radius_tolerance", full_radius, relation="lt")
    return Certificate(target=target, center=full_center, radius=full_radius, chain=tuple(entries))


def level3_enclosure() -> tuple[Fraction, Fraction]:
    """(center, radius) for measure(P(D_3 x D_3)), raising if verification fails."""
    cert = certify(TARGET_LEVEL3)
    if not cert.ok:
        names = ", ".join(entry.name for entry in cert.failures())
        raise CertificationError(f"certification failed at: {names}")
    return cert.center, cert.radius


def full_enclosure() -> tuple[Fraction, Fraction]:
    """(center, radius) for measure(P(C x C)), raising if verification fails."""
    cert = certify(TARGET_FULL)
    if not cert.ok:
        names = ", ".join(entry.name for entry in cert.failures())
        raise CertificationError(f"certification failed at: {names}")
    return cert.center, cert.radius
