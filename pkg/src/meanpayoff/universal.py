"""The universal well-founded monotone graph for strictly negative limit
averages.

Positions are pairs (slope, offset) with slope >= 1 and offset >= 0, ordered
lexicographically.  A weight-w step from (m, t) to (m2, t2) is allowed when
the slope strictly drops, or the slope is unchanged and the offset pays for
the step: m * w <= t - t2 - 1.  Along any path that keeps slope m, offsets
telescope, so the weight sum of an l-step path from offset t0 to offset tl
is at most (t0 - tl - l) / m.  Offsets are nonnegative and slopes cannot
drop forever, which caps every partial average and forces the limit average
below zero.
"""

from __future__ import annotations

from typing import NamedTuple


class UVertex(NamedTuple):
    slope: int
    offset: int


def _check(u: UVertex) -> None:
    if not isinstance(u.slope, int) or not isinstance(u.offset, int):
        raise ValueError(f"position coordinates must be integers, got {u}")
    if u.slope < 1 or u.offset < 0:
        raise ValueError(f"position out of range: slope >= 1, offset >= 0, got {u}")


def _check_weight(w: int) -> None:
    if not isinstance(w, int):
        raise ValueError(f"weight must be an integer, got {w!r}")


def lex_compare(u: UVertex, v: UVertex) -> int:
    """-1, 0, or 1 as u is lexicographically below, equal to, or above v."""
    _check(u)
    _check(v)
    if u == v:
        return 0
    return -1 if (u.slope, u.offset) < (v.slope, v.offset) else 1


def u_edge(u: UVertex, w: int, v: UVertex) -> bool:
    """Is there a weight-``w`` edge from ``u`` to ``v``?"""
    _check(u)
    _check(v)
    _check_weight(w)
    if u.slope > v.slope:
        return True
    if u.slope < v.slope:
        return False
    return u.slope * w <= u.offset - v.offset - 1


def min_source_potential(m: int, w: int, t_target: int) -> int:
    """Least offset t such that (m, t) has a weight-``w`` edge to (m, t_target).

    The same-slope condition m*w <= t - t' - 1 rearranges to
    t >= t' + m*w + 1, clamped at zero since offsets are nonnegative.  When
    the clamp fires, t = 0 already satisfies the inequality, so the edge
    exists there too.
    """
    _check(UVertex(m, t_target))
    _check_weight(w)
    return max(0, t_target + m * w + 1)
