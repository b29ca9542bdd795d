"""Staircase polygons with a single staircase hole of fixed half-perimeter.

Column-by-column wall dynamic programming.  The outer polygon is a pair of
non-decreasing walls (a, b) per cell column (cells in rows [a, b)); a hole
of half-perimeter s is one of the staircase shapes of that size, placed at
some column and vertical offset.  "Strictly inside" means every cell sharing
at least a corner with the hole's boundary is an outer cell, which per
column j of the hole (plus one flanking column on each side) reads

    a_j <= min(floor over hole columns j-1, j, j+1) - 1,
    b_j >= max(ceil  over hole columns j-1, j, j+1) + 1.

A placed hole is therefore a "window": a run of per-column interval
constraints on the outer walls, entered at most once per polygon.  Values
carry the binomial area moments sum C(net_area, j), j <= k_max, of the net
region (outer cells minus hole cells), updated per column by a jet
multiplication with (1+eps)^z, z the column's net cell count.

A column step from walls (a, b) to (a', b') allows any a' in [a, b-1] and
b' >= b (adding 1 + b' - b to the half-perimeter), so each state's
successors form a rectangle in (a', b').  Contributions are recorded as
rectangle corners in a difference dictionary and expanded by two prefix
passes, so every successor state is touched exactly once per column.
"""

from __future__ import annotations

import math

from .oracle import staircase_shapes
from .series import IntegerSeries, _stirling2

_PRE, _DONE = 0, 1


def _binom(z, j):
    """C(z, j) for any integer z (negative upper index allowed)."""
    if z >= 0:
        return math.comb(z, j) if j <= z else 0
    return (-1) ** j * math.comb(j - z - 1, j)


def _jet_mul(u, v, k):
    out = [0] * (k + 1)
    for i, ui in enumerate(u):
        if ui:
            for j in range(k + 1 - i):
                if v[j]:
                    out[i + j] += ui * v[j]
    return tuple(out)


def hole_windows(s):
    """Constraint windows for every hole shape of half-perimeter s.

    Returns a list of (cols, cells) pairs: for phase p = 0 .. w+1 (left
    flank, hole columns, right flank), cols[p] = (lo, hi) meaning the outer
    walls must satisfy a <= lo and b >= hi, and cells[p] is the number of
    hole cells in that column (0 at the flanks).
    """
    if s < 2:
        raise ValueError("hole half-perimeter must be at least 2")
    windows = []
    for floors, ceils in staircase_shapes(s):
        w = len(floors)
        if w + ceils[-1] != s:
            continue
        cols = []
        cells = []
        for p in range(w + 2):
            js = [j for j in (p - 2, p - 1, p) if 0 <= j < w]
            lo = min(floors[j] for j in js) - 1
            hi = max(ceils[j] for j in js) + 1
            cols.append((lo, hi))
            cells.append(ceils[p - 1] - floors[p - 1] if 1 <= p <= w else 0)
        windows.append((tuple(cols), tuple(cells)))
    return windows


def fixed_size_series(m_max, s, k_max=0):
    """Exact area-moment series of once-punctured staircase polygons whose
    hole is a staircase polygon of half-perimeter s.

    Returns a FixedSizeResult; exact for all half-perimeters m <= m_max.
    """
    if m_max < s + 6:
        raise ValueError("m_max too small to contain any hole of this size")
    windows = hole_windows(s)
    k = k_max
    pows = {}

    def pw(z):
        v = pows.get(z)
        if v is None:
            v = pows[z] = tuple(_binom(z, j) for j in range(k + 1))
        return v

    out = [[0] * (k + 1) for _ in range(m_max + 1)]
    # The hole boundary contributes s to the total half-perimeter, so the
    # outer polygon is enumerated to m_max - s and outputs are shifted by s.
    m_cap = m_max - s
    # state key: (m_base, a, b, win): outer half-perimeter so far = m_base+b;
    # win = _PRE before the hole, _DONE after, or (widx, dy, p) meaning the
    # next column must satisfy the window's phase-p constraints.
    state = {}
    for b in range(1, m_cap - 1):
        state[(1, 0, b, _PRE)] = pw(b)

    while state:
        # diff[(win2, hc)][(a', b_floor)] accumulates rectangle corners; all
        # states share m_base growth +1 per column, so m_base is tracked per
        # group via the key as well.
        diff = {}
        for (m_base, a, b, win), val in state.items():
            if m_base + 1 + b > m_cap:
                continue
            if win == _PRE or win == _DONE:
                succ = [(b - 1, b, win, 0)]
                if win == _PRE:
                    for widx, (cols, cells) in enumerate(windows):
                        # the current column is the hole's left flank: its
                        # walls must already cover the phase-0 interval
                        lo0, hi0 = cols[0]
                        lo1, hi1 = cols[1]
                        need = len(cols) - 1  # columns still to be added
                        dy_hi = min(b - hi0, m_cap - m_base - need - hi1)
                        for dy in range(a - lo0, dy_hi + 1):
                            succ.append(
                                (
                                    min(b - 1, lo1 + dy),
                                    max(b, hi1 + dy),
                                    (widx, dy, 2),
                                    cells[1],
                                )
                            )
            else:
                widx, dy, phase = win
                cols, cells = windows[widx]
                lo, hi = cols[phase]
                win2 = _DONE if phase == len(cols) - 1 else (widx, dy, phase + 1)
                succ = [(min(b - 1, lo + dy), max(b, hi + dy), win2, cells[phase])]
            for ap_cap, b_lo, win2, hc in succ:
                if ap_cap < a or m_base + 1 + b_lo > m_cap:
                    continue
                if win2 != _PRE and win2 != _DONE:
                    # a pending window still needs this many columns
                    left = len(windows[win2[0]][0]) - win2[2] + 1
                    if m_base + left + b_lo > m_cap:
                        continue
                v = _jet_mul(val, pw(-hc), k) if hc else val
                grp = diff.get((m_base + 1, win2))
                if grp is None:
                    grp = diff[(m_base + 1, win2)] = {}
                k1 = (a, b_lo)
                k2 = (ap_cap + 1, b_lo)
                cur = grp.get(k1)
                grp[k1] = tuple(x + y for x, y in zip(cur, v)) if cur else v
                cur = grp.get(k2)
                neg = tuple(-x for x in v)
                grp[k2] = tuple(x + y for x, y in zip(cur, neg)) if cur else neg
        state = {}
        for (m_base, win2), grp in diff.items():
            by_a = {}
            for (ap, bf), v in grp.items():
                col = by_a.get(ap)
                if col is None:
                    col = by_a[ap] = {}
                cur = col.get(bf)
                col[bf] = tuple(x + y for x, y in zip(cur, v)) if cur else v
            b_hi = m_cap - m_base
            run = {}
            for ap in range(min(by_a), max(by_a)):
                col = by_a.get(ap)
                if col:
                    for bf, v in col.items():
                        cur = run.get(bf)
                        run[bf] = tuple(x + y for x, y in zip(cur, v)) if cur else v
                        if not any(run[bf]):
                            del run[bf]
                if not run:
                    continue
                acc = None
                for b2 in range(min(run), b_hi + 1):
                    v = run.get(b2)
                    if v is not None:
                        acc = tuple(x + y for x, y in zip(acc, v)) if acc else v
                    if acc is None or not any(acc):
                        continue
                    v2 = _jet_mul(acc, pw(b2 - ap), k)
                    state[(m_base, ap, b2, win2)] = v2
                    if win2 == _DONE:
                        row = out[m_base + b2 + s]
                        for j in range(k + 1):
                            row[j] += v2[j]
    return FixedSizeResult(m_max, s, k, out)


class FixedSizeResult:
    """Area-moment tables for once-punctured polygons with a fixed-size hole."""

    def __init__(self, m_max, s, k_max, table):
        self.m_max = m_max
        self.s = s
        self.k_max = k_max
        self._table = table

    def counts(self):
        return IntegerSeries([row[0] for row in self._table], self.m_max)

    def factorial_moment(self, j):
        if j > self.k_max:
            raise ValueError(f"moment order {j} exceeds k_max={self.k_max}")
        return IntegerSeries([row[j] for row in self._table], self.m_max)

    def moment(self, kk):
        if kk > self.k_max:
            raise ValueError(f"moment order {kk} exceeds k_max={self.k_max}")
        weights = [_stirling2(kk, j) * math.factorial(j) for j in range(kk + 1)]
        return IntegerSeries(
            [sum(w * row[j] for j, w in enumerate(weights)) for row in self._table],
            self.m_max,
        )
