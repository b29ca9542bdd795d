"""Staircase polygons from the quadratic q-difference equation.

The perimeter-and-area generating function P(x, q) of staircase polygons
(x marks half-perimeter, q marks area) satisfies

    P(x, q) = x^2 q / (1 - 2 q x - P(qx, q)),

which determines every coefficient: the right-hand side, fed a series known
to x-order m, returns the series to order m+1.  Once-minimally-punctured
polygons then follow without any further enumeration from

    S1(x, q) = x^4 / (1 - 2 q x - P(qx, q))^2
               * (P(qx, q) - q x P_x(qx, q) + q P_q(qx, q)),

with P_x, P_q the partial derivatives.  Both series are computed exactly
over the integers and provide an enumeration-free cross-check of the
transfer matrix.
"""

from __future__ import annotations

from .series import BivariateSeries


def _shift_x(b, k):
    """Multiply by x^k, raising the truncation order (all data is exact)."""
    return BivariateSeries(
        [[] for _ in range(k)] + [list(p) for p in b.qpolys], b.x_truncation + k
    )


def _one_minus_2qx_minus(pqx):
    out = [[-c for c in p] for p in pqx.qpolys]
    out[0] = [1 + c for c in out[0]] if out[0] else [1]
    out[1].extend([0] * (2 - len(out[1])))
    out[1][1] -= 2
    return BivariateSeries(out, pqx.x_truncation)


def solve_qfe(trunc_x, method="fixed_point"):
    """Solve P = x^2 q / (1 - 2qx - P(qx,q)) exactly to x-order trunc_x."""
    if trunc_x < 2:
        raise ValueError("trunc_x must be at least 2")
    if method == "fixed_point":
        x2q = BivariateSeries([[], [], [0, 1]], trunc_x)
        p = BivariateSeries.zero(trunc_x)
        while True:
            nxt = x2q * _one_minus_2qx_minus(p.substitute_qx()).reciprocal()
            if nxt == p:
                return p
            p = nxt
    if method == "recurrence":
        # coefficient of x^m in P (1 - 2qx - P(qx,q)) = q x^2:
        # P_m = q [m=2] + 2q P_{m-1} + sum_{i=2}^{m-2} q^i P_i P_{m-i}
        polys = [[] for _ in range(trunc_x + 1)]
        for m in range(2, trunc_x + 1):
            acc = [0, 1] if m == 2 else []
            prev = polys[m - 1]
            if prev:
                need = len(prev) + 1
                acc.extend([0] * (need - len(acc)))
                for n, c in enumerate(prev):
                    acc[n + 1] += 2 * c
            for i in range(2, m - 1):
                pi, pj = polys[i], polys[m - i]
                if not pi or not pj:
                    continue
                need = i + len(pi) + len(pj) - 1
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for a, ca in enumerate(pi):
                    if ca:
                        for b, cb in enumerate(pj):
                            if cb:
                                acc[i + a + b] += ca * cb
            polys[m] = acc
        return BivariateSeries(polys, trunc_x)
    raise ValueError(f"unknown method {method!r}")


def minimal_puncture_qfe(trunc_x, method="fixed_point"):
    """Once-minimally-punctured staircase polygons, exactly to order trunc_x."""
    if trunc_x < 8:
        raise ValueError("trunc_x must be at least 8")
    p = solve_qfe(trunc_x - 4, method)
    pqx = p.substitute_qx()
    r = _one_minus_2qx_minus(pqx).reciprocal()
    qx_px = _shift_x(p.dx().substitute_qx().mul_q(), 1)
    q_pq = p.dq().substitute_qx().mul_q()
    inner = pqx - qx_px + q_pq
    return _shift_x(r * r * inner, 4)


def area_moment_gf(p, k):
    """Apply (q d/dq)^k and set q = 1: the k-th ordinary area-moment series."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return p.moment(k)


def qfe_residual(p):
    """P (1 - 2qx - P(qx,q)) - q x^2; zero to truncation order if P solves it."""
    x2q = BivariateSeries([[], [], [0, 1]], p.x_truncation)
    return p * _one_minus_2qx_minus(p.substitute_qx()) - x2q
