"""Transfer-matrix enumeration of minimally punctured staircase polygons.

The lattice is swept by a vertical boundary line, column by column.  A
signature records the states of the horizontal edges cut by the line:
state 1 for the two directed walks of the outer polygon, state 2 for edges
of a pending minimal puncture (a unit-cell hole).  Updating a vertex follows
four local rules, depending on the states of the edge to its left and the
edge below it:

* both empty: stay empty, or insert a puncture pair (state 2 right and
  above) when the vertex lies strictly between the two outer walks;
* left empty, bottom occupied: a state-1 walk continues right or up, a
  state-2 edge continues right only;
* left occupied, bottom empty: a state-1 walk continues right or up, a
  state-2 edge continues up only;
* both occupied: state (2,2) closes the puncture, state (1,1) closes the
  polygon (harvested when nothing else is alive), mixed states are invalid
  and discarded.

Because both walls of a staircase polygon are monotone, a signature is
fully described by the lower walk row, the upper walk row, and the rows of
pending puncture pairs; the half-perimeter at closure is the column index
plus the closing row plus twice the puncture count, so per-signature values
only need to track the puncture count and area moments.  Net area (outer
minus holes) is accumulated directly: a completed cell is inside the net
region exactly when the number of occupied edges below it in its column is
odd, which excludes hole cells without any explicit subtraction.

Values are packed into a single big integer: one group of fixed-width
fields per puncture count r, holding the binomial area moments
S_j = sum C(area, j) over partial configurations.  Adding configurations is
then one integer addition, inserting a puncture is a shift by one group,
and multiplying in a column's area is one multiplication by the packed
polynomial (1+eps)^z followed by a mask.

Widths are capped at half the target perimeter using transposition
symmetry: with f = m_max // 2, count(all) = 2 * count(height <= f)
- count(height <= f and width <= f), exactly, for every m <= m_max.
"""

from __future__ import annotations

import math
from bisect import bisect_left

from .series import BivariateSeries, IntegerSeries, _stirling2

_R_CAP = 8
_K_CAP = 12
_BIV_M_CAP = 28


class TmResult:
    """Per-puncture-count area-moment tables from a transfer-matrix run."""

    def __init__(self, m_max, r_max, k_max, table, bivariate_mode):
        self.m_max = m_max
        self.r_max = r_max
        self.k_max = k_max
        self._table = table
        self._bivariate = bivariate_mode

    def counts(self, r):
        """IntegerSeries of polygon counts with exactly r punctures."""
        if self._bivariate:
            return self.bivariate(r).eval_q1()
        return IntegerSeries([row[0] for row in self._table[r]], self.m_max)

    def factorial_moment(self, r, j):
        """Series of sum_n C(n, j) p_{m,n} for puncture count r."""
        if self._bivariate:
            return IntegerSeries(
                [
                    sum(c * math.comb(n, j) for n, c in enumerate(row))
                    for row in self._table[r]
                ],
                self.m_max,
            )
        if j > self.k_max:
            raise ValueError(f"moment order {j} exceeds k_max={self.k_max}")
        return IntegerSeries([row[j] for row in self._table[r]], self.m_max)

    def moment(self, r, k):
        """Ordinary area-moment series sum_n n^k p_{m,n} for puncture count r."""
        if self._bivariate:
            return self.bivariate(r).moment(k)
        if k > self.k_max:
            raise ValueError(f"moment order {k} exceeds k_max={self.k_max}")
        weights = [_stirling2(k, j) * math.factorial(j) for j in range(k + 1)]
        return IntegerSeries(
            [sum(w * row[j] for j, w in enumerate(weights)) for row in self._table[r]],
            self.m_max,
        )

    def bivariate(self, r):
        """Full area distribution as a BivariateSeries (bivariate mode only)."""
        if not self._bivariate:
            raise ValueError("run tm_enumerate with bivariate=True for distributions")
        return BivariateSeries(
            [list(row) for row in self._table[r]], self.m_max
        )


def tm_enumerate(m_max, r_max=0, k_max=0, bivariate=False, debug=False):
    """Enumerate staircase polygons with up to r_max minimal punctures.

    Tracks area moments up to order k_max (or the full area distribution when
    ``bivariate`` is set, for small m_max).  Exact, for all half-perimeters
    m <= m_max.
    """
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    if not 0 <= r_max <= _R_CAP:
        raise ValueError(f"r_max must be in 0..{_R_CAP}")
    if not 0 <= k_max <= _K_CAP:
        raise ValueError(f"k_max must be in 0..{_K_CAP}")
    if bivariate and m_max > _BIV_M_CAP:
        raise ValueError(f"bivariate mode is limited to m_max <= {_BIV_M_CAP}")
    f = m_max // 2
    a = _sweep(m_max, r_max, k_max, f, m_max - 1, bivariate, debug)
    b = _sweep(m_max, r_max, k_max, f, f, bivariate, debug)
    table = [
        [
            [2 * x - y for x, y in zip(row_a, row_b)]
            for row_a, row_b in zip(a[r], b[r])
        ]
        for r in range(r_max + 1)
    ]
    return TmResult(m_max, r_max, k_max, table, bivariate)


def _check_signature(L, U, holes, h_cap):
    assert 0 <= L < U <= h_cap, (L, U)
    prev = L
    for p in holes:
        assert prev < p and p + 1 < U, (L, U, holes)
        prev = p + 1


def _sweep(m_max, r_max, k_max, h_cap, w_cap, bivariate, debug):
    # Signatures are packed into ints: bits 0-6 the lower walk row, bits
    # 7-13 the upper walk row, then one 7-bit field per pending puncture row
    # (stored as row+1, ascending from the low bits).
    if h_cap > 126:
        raise ValueError("height cap exceeds the packed-signature limit")
    if bivariate:
        data = h_cap * (m_max - 1) + 1
        group = data
        limb = max(64, 2 * m_max + 8)
    else:
        data = k_max + 1
        group = 2 * k_max + 1  # k_max padding limbs absorb multiplication spill
        n_bits = ((m_max * m_max) // 4 + 1).bit_length()
        limb = 2 * m_max + k_max * n_bits + 64
    group_bits = group * limb
    field = (1 << limb) - 1

    gmask = []  # mask of one r-group's data limbs
    masks_r = []  # cumulative: groups 0..r
    acc = 0
    for r in range(r_max + 1):
        g = 0
        for j in range(data):
            g |= field << (r * group_bits + j * limb)
        gmask.append(g)
        acc |= g
        masks_r.append(acc)
    full_mask = masks_r[-1]

    mz_cache = {0: 1}

    def area_factor(z):
        m = mz_cache.get(z)
        if m is None:
            if bivariate:
                m = 1 << (z * limb)
            else:
                m = 0
                for j in range(min(z, k_max) + 1):
                    m |= math.comb(z, j) << (j * limb)
            mz_cache[z] = m
        return m

    out = [[[0] * data for _ in range(m_max + 1)] for _ in range(r_max + 1)]
    # state: packed signature -> (value, lowest nonzero r-group)
    state = {(h << 7): (1, 0) for h in range(1, h_cap + 1) if 1 + h <= m_max}

    for c in range(1, w_cap + 1):
        if not state:
            break
        yu_hi = m_max - c - 1
        if h_cap < yu_hi:
            yu_hi = h_cap
        # diff[spack][yL | U<<7] accumulates range endpoints: each
        # (signature, insertion set) contributes one value to the whole
        # rectangle yL in [L, yL_hi) x yU in [U, yu_hi], expanded by prefix
        # sums after the loop.
        diff = {}
        for key, (val, r_lo) in state.items():
            L = key & 127
            U = (key >> 7) & 127
            sp = key >> 14
            holes = []
            while sp:
                holes.append((sp & 127) - 1)
                sp >>= 7
            if debug:
                _check_signature(L, U, tuple(holes), h_cap)
            # net-interior cells of the column just completed: parity of
            # occupied edges below a cell is odd exactly between alternating
            # occupied rows, which skips hole cells automatically.
            z = U - L - len(holes)
            if z:
                fz = area_factor(z)
                if fz != 1:
                    val = (val * fz) & full_mask
            # both-occupied (1,1): close the polygon; valid only with no
            # pending punctures (everything else must be empty).
            if not holes and c + U <= m_max:
                m0 = c + U
                for r in range(r_lo, r_max + 1):
                    if m0 + 2 * r > m_max:
                        break
                    grp = val >> (r * group_bits)
                    row = out[r][m0 + 2 * r]
                    for j in range(data):
                        fv = (grp >> (j * limb)) & field
                        if fv:
                            row[j] += fv
            if yu_hi < U:
                continue
            # the lower walk must emit its rightward edge below the first
            # pending puncture (a state-1 carry cannot pass state-2 edges)
            E = holes[0] if holes else U
            ku = U << 7
            grp = diff.get(0)
            if grp is None:
                grp = diff[0] = {}
            k1 = L | ku
            k2 = E | ku
            grp[k1] = grp.get(k1, 0) + val
            grp[k2] = grp.get(k2, 0) - val
            # new punctures: budget-capped subset count, each shifting the
            # value one r-group up (the x^delta puncture-count factor)
            s_cap = r_max - r_lo
            # a pending puncture blocks closure in the next column, so a
            # signature carrying one closes at column c+2 at the earliest
            b_cap = (m_max - c - 2 - U) // 2 - r_lo
            if b_cap < s_cap:
                s_cap = b_cap
            if s_cap <= 0 or U - L < 3:
                continue
            if holes:
                excl = set()
                for p in holes:
                    excl.add(p - 1)
                    excl.add(p)
                    excl.add(p + 1)
                cand = [y for y in range(L + 1, U - 1) if y not in excl]
            else:
                cand = list(range(L + 1, U - 1))
            n = len(cand)
            if not n:
                continue
            shifted = []
            v = val
            for _ in range(s_cap):
                v = (v << group_bits) & full_mask
                if not v:
                    break
                shifted.append(v)
            if not shifted:
                continue
            s_cap = len(shifted)
            # iterative DFS over insertion rows (ascending, >= 2 apart)
            stack = [(i, 1, cand[i] + 1, cand[i]) for i in range(n)]
            while stack:
                i, depth, spack, last = stack.pop()
                vS = shifted[depth - 1]
                grp = diff.get(spack)
                if grp is None:
                    grp = diff[spack] = {}
                s0 = (spack & 127) - 1
                hi = s0 if s0 < E else E
                k2 = hi | ku
                grp[k1] = grp.get(k1, 0) + vS
                grp[k2] = grp.get(k2, 0) - vS
                if depth < s_cap:
                    j = bisect_left(cand, last + 2, i + 1)
                    off = 7 * depth
                    for j2 in range(j, n):
                        stack.append(
                            (j2, depth + 1, spack | ((cand[j2] + 1) << off), cand[j2])
                        )
        # expand the recorded ranges: prefix over yL, then over yU (with the
        # per-height budget mask), giving each output signature exactly once
        state = {}
        for spack, grp in diff.items():
            by_u = {}
            for k2, delta in grp.items():
                u = k2 >> 7
                col = by_u.get(u)
                if col is None:
                    col = by_u[u] = {}
                yl = k2 & 127
                col[yl] = col.get(yl, 0) + delta
            mid = {}
            for u, col in by_u.items():
                run = 0
                for yl in range(min(col), max(col)):
                    d = col.get(yl)
                    if d is not None:
                        run += d
                    if run:
                        row = mid.get(yl)
                        if row is None:
                            row = mid[yl] = {}
                        row[u] = run
            base = spack << 14
            pen = 2 if spack else 1
            for yl, row in mid.items():
                run = 0
                for yu in range(min(row), yu_hi + 1):
                    d = row.get(yu)
                    if d is not None:
                        run += d
                    if not run:
                        continue
                    alive = (m_max - c - pen - yu) >> 1
                    v = run & masks_r[alive] if alive < r_max else run
                    if v:
                        r_lo = 0
                        while not v & gmask[r_lo]:
                            r_lo += 1
                        state[yl | (yu << 7) | base] = (v, r_lo)
    return out
