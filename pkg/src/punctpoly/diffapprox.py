"""Biased differential approximants with a regular singular point at x_c.

Given a power series F and a degree vector [N_K, ..., N_0], an order-K
biased differential approximant is an ODE

    sum_{i=0}^{K} (x - x_c)^i Q_i(x) (x d/dx)^i F(x) = 0,

with deg Q_i = N_i, whose formal solution agrees with the input series
through the first M = sum(N_i + 1) coefficients.  The (x - x_c)^i factors
force x_c to be a regular singular point with the leading coefficient
vanishing there to order exactly K (biasing).  The matching system is
homogeneous; it is normalised by fixing the leading coefficient of Q_K
to 1, a convention that leaves the stable indicial exponents unchanged
but makes individual rows differ from other normalisations.

Local solutions (x_c - x)^lambda give the indicial polynomial

    sum_i Q_i(x_c) x_c^i lambda (lambda - 1) ... (lambda - i + 1) = 0,

whose K roots estimate the critical exponents.  Exponents that persist
across degree vectors are genuine; the surplus ones scatter.  Sign
convention: a singular part (1 - x/x_c)^lambda is reported as lambda.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp


class BiasedDA:
    """Order-K ODE data: polynomials Q_K..Q_0, x_c, matched length M."""

    def __init__(self, K, degrees, x_c, polys, matched, prec):
        self.K = K
        self.degrees = degrees
        self.x_c = x_c
        self.polys = polys  # coefficient lists, polys[i] = Q_i, low to high
        self.matched = matched
        self.prec = prec

    def q_at_xc(self, i):
        xc = self.x_c
        acc = mp.mpf(0)
        for c in reversed(self.polys[i]):
            acc = acc * xc + c
        return acc


def _theta_coeff(coeffs, t, i):
    """[x^t] of (x d/dx)^i F, with F given by coeffs."""
    return mp.mpf(t) ** i * coeffs[t] if 0 <= t < len(coeffs) else mp.mpf(0)


def build_biased_da(coeffs, K, degrees, x_c, prec=50):
    """Fit the biased DA matching the first M = sum(N_i + 1) coefficients.

    degrees lists [N_K, ..., N_0] (leading order first, as in the table
    notation).  Requires len(coeffs) >= M + K; the leading coefficient of
    Q_K is fixed to 1 and the remaining M - 1 coefficients solve the square
    matching system in extended precision.
    """
    if len(degrees) != K + 1:
        raise ValueError("degrees must list N_K..N_0, one per ODE order")
    M = sum(n + 1 for n in degrees)
    if len(coeffs) < M + K:
        raise ValueError(f"need at least {M + K} coefficients, got {len(coeffs)}")
    dps = max(prec, 50) + M // 2
    with mp.workdps(dps):
        if isinstance(x_c, (int, Fraction)):
            xc = mp.mpf(Fraction(x_c).numerator) / Fraction(x_c).denominator
        else:
            xc = mp.mpf(x_c)
        f = [
            mp.mpf(Fraction(c).numerator) / Fraction(c).denominator
            if isinstance(c, (int, Fraction))
            else mp.mpf(c)
            for c in coeffs
        ]
        # column (i, j): coefficient q_{i,j} of x^j in Q_i; the term
        # (x - x_c)^i x^j theta^i F contributes at order n:
        # sum_l C(i, l) (-x_c)^(i-l) (n-l-j)^i f_{n-l-j}
        cols = []
        for oi, n_i in enumerate(degrees):
            i = K - oi
            for j in range(n_i + 1):
                cols.append((i, j))
        fixed = (K, degrees[0])  # leading coefficient of Q_K, set to 1
        cols.remove(fixed)

        def entry(n, i, j):
            acc = mp.mpf(0)
            for l in range(i + 1):
                t = n - l - j
                if 0 <= t < len(f):
                    acc += mp.binomial(i, l) * (-xc) ** (i - l) * _theta_coeff(f, t, i)
            return acc

        A = mp.matrix(M - 1, M - 1)
        b = mp.matrix(M - 1, 1)
        for n in range(M - 1):
            for cn, (i, j) in enumerate(cols):
                A[n, cn] = entry(n, i, j)
            b[n] = -entry(n, *fixed)
        polys = [[mp.mpf(0)] * (degrees[K - i] + 1) for i in range(K + 1)]
        try:
            sol = mp.lu_solve(A, b)
            polys[fixed[0]][fixed[1]] = mp.mpf(1)
            for cn, (i, j) in enumerate(cols):
                polys[i][j] = +sol[cn]
        except ZeroDivisionError:
            # the series satisfies a lower-degree ODE exactly, so the monic
            # normalisation is unreachable; any null vector of the full
            # homogeneous system is a valid approximant (a polynomial
            # multiple of the minimal ODE) with the same indicial roots
            H = mp.matrix(M - 1, M)
            for n in range(M - 1):
                for cn, (i, j) in enumerate(cols):
                    H[n, cn] = entry(n, i, j)
                H[n, M - 1] = entry(n, *fixed)
            _, _, V = mp.svd_r(H, full_matrices=True)
            null = [V[M - 1, c] for c in range(M)]
            polys[fixed[0]][fixed[1]] = +null[M - 1]
            for cn, (i, j) in enumerate(cols):
                polys[i][j] = +null[cn]
        return BiasedDA(K, degrees, xc, polys, M, prec)


def indicial_exponents(da):
    """The K roots of the indicial polynomial at x_c.

    Roots are eigenvalues of the companion matrix of the monic indicial
    polynomial; real parts returned as mpf, complex roots as mpc.  A nearly
    vanishing Q_K(x_c) makes x_c an irregular point of the approximant and
    raises ValueError.
    """
    with mp.workdps(max(da.prec, 50)):
        lead = da.q_at_xc(da.K)
        scale = max(abs(da.q_at_xc(i)) for i in range(da.K + 1))
        if abs(lead) <= 1e-20 * scale:
            raise ValueError("Q_K(x_c) ~ 0: irregular singular point")
        # sum_i q_i x_c^i lambda(lambda-1)...(lambda-i+1) as a polynomial
        poly = [mp.mpf(0)] * (da.K + 1)  # coefficients of lambda^t
        for i in range(da.K + 1):
            c = da.q_at_xc(i) * da.x_c ** i
            falling = [mp.mpf(1)]  # lambda(lambda-1)..(lambda-i+1)
            for l in range(i):
                nxt = [mp.mpf(0)] * (len(falling) + 1)
                for t, a in enumerate(falling):
                    nxt[t + 1] += a
                    nxt[t] -= a * l
                falling = nxt
            for t, a in enumerate(falling):
                poly[t] += c * a
        monic = [p / poly[da.K] for p in poly[:-1]]
        comp = mp.matrix(da.K, da.K)
        for t in range(da.K):
            comp[t, da.K - 1] = -monic[t]
            if t:
                comp[t, t - 1] = mp.mpf(1)
        res = mp.eig(comp, left=False, right=False)
        eig = res[0] if isinstance(res, tuple) else res
        return sorted(
            [mp.re(e) if abs(mp.im(e)) < 1e-25 else e for e in eig],
            key=lambda z: (mp.re(z), mp.im(z)),
        )


def exponent_scan(coeffs, K, degree_grid, x_c, prec=50):
    """One row per degree vector: the sorted indicial exponent estimates.

    Mirrors the table layout of biased-DA exponent studies; exponents that
    agree across rows are the stable ones, the rest scatter.
    """
    rows = []
    for degrees in degree_grid:
        try:
            da = build_biased_da(coeffs, K, list(degrees), x_c, prec)
            rows.append({"degrees": list(degrees), "exponents": indicial_exponents(da)})
        except ValueError as exc:
            rows.append({"degrees": list(degrees), "error": str(exc)})
    return rows


def stable_exponents(rows, target, tol=1e-6):
    """The rows' exponents within tol of target (stability check helper)."""
    hits = []
    for row in rows:
        if "error" in row:
            hits.append(None)
            continue
        near = [e for e in row["exponents"] if abs(e - target) <= tol]
        hits.append(near[0] if near else None)
    return hits


def matched_residuals(da, coeffs, orders):
    """|[x^n] ODE(F)| at the given orders (diagnostic; ~0 when matched)."""
    with mp.workdps(max(da.prec, 50) + da.matched // 2):
        f = [
            mp.mpf(Fraction(c).numerator) / Fraction(c).denominator
            if isinstance(c, (int, Fraction))
            else mp.mpf(c)
            for c in coeffs
        ]
        out = []
        for n in orders:
            acc = mp.mpf(0)
            for i, q in enumerate(da.polys):
                for j, qc in enumerate(q):
                    if qc:
                        for l in range(i + 1):
                            t = n - l - j
                            if 0 <= t < len(f):
                                acc += (
                                    qc
                                    * mp.binomial(i, l)
                                    * (-da.x_c) ** (i - l)
                                    * mp.mpf(t) ** i
                                    * f[t]
                                )
            out.append(abs(acc))
        return out
