"""Amplitude extraction from coefficient sequences by window fits.

A coefficient sequence p_m with exponential growth mu^m is matched against
an asymptotic ansatz

    p_m / mu^m = sum_i  a_i * t_i(m),

where each basis term t_i(m) is m^p, m^p log m, (-1)^m m^p, or
sigma_m m^p with sigma_m an exact sign pattern (the sign of the m-th Taylor
coefficient of poly(x)^alpha, for oscillatory singularities off the positive
axis).  The amplitudes are obtained from a square linear solve on the
window of consecutive orders M, M-1, ..., M-(count-1) in extended
precision; plotting the estimates against 1/M is the extrapolation step.

The same square-solve machinery estimates critical amplitudes from partial
sums: sum_{m<=M} p_m x_c^m = P(x_c) + b_1 M^{e_1} + b_2 M^{e_2} + ... for a
supplied ladder of correction exponents.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .series import RationalPolynomial, algebraic_power


def sign_pattern(poly, alpha, index):
    """Sign (-1, 0, +1) of the x^index Taylor coefficient of poly**alpha."""
    if poly[0] != 1:
        raise ValueError("sign_pattern needs poly(0) = 1")
    c = algebraic_power(poly, Fraction(alpha), index).coefficients[index]
    return (c > 0) - (c < 0)


class Term:
    """One basis term of an asymptotic form."""

    __slots__ = ("exponent", "modifier", "poly", "alpha")

    def __init__(self, exponent, modifier=None, poly=None, alpha=None):
        if modifier not in (None, "log_m", "alternating", "sign_pattern"):
            raise ValueError(f"unknown modifier {modifier!r}")
        if modifier == "sign_pattern" and (poly is None or alpha is None):
            raise ValueError("sign_pattern terms need poly and alpha")
        self.exponent = exponent
        self.modifier = modifier
        self.poly = poly
        self.alpha = alpha

    def value(self, m):
        e = self.exponent
        ev = (
            mp.mpf(e.numerator) / e.denominator
            if isinstance(e, Fraction)
            else mp.mpf(e)
        )
        v = mp.mpf(m) ** ev
        if self.modifier == "log_m":
            v *= mp.log(m)
        elif self.modifier == "alternating":
            if m % 2:
                v = -v
        elif self.modifier == "sign_pattern":
            v *= sign_pattern(self.poly, self.alpha, m)
        return v


class AsymptoticForm:
    """Growth base mu and an ordered list of basis terms."""

    def __init__(self, growth_base, terms):
        self.growth_base = growth_base
        self.terms = [t if isinstance(t, Term) else Term(*t) for t in terms]
        fams = {}
        for t in self.terms:
            fams.setdefault(t.modifier, []).append(Fraction(t.exponent))
        for mod, exps in fams.items():
            if len(set(exps)) != len(exps):
                raise ValueError(
                    f"duplicate exponent within the {mod} modifier family"
                )

    @property
    def count(self):
        return len(self.terms)

    @staticmethod
    def power_family(growth_base, start, count, step=Fraction(-1), modifier=None):
        """Terms start, start+step, ... (step < 0), all with one modifier."""
        start = Fraction(start)
        step = Fraction(step)
        return AsymptoticForm(
            growth_base, [Term(start + j * step, modifier) for j in range(count)]
        )

    def __add__(self, other):
        if other.growth_base != self.growth_base:
            raise ValueError("forms must share the growth base")
        return AsymptoticForm(self.growth_base, self.terms + other.terms)


class FitResult:
    """Amplitudes from one square window solve."""

    def __init__(self, M, K, form, amplitudes, condition):
        self.M = M
        self.K = K
        self.form = form
        self.amplitudes = amplitudes
        self.condition = condition

    def __repr__(self):
        return f"FitResult(M={self.M}, K={self.K}, n={len(self.amplitudes)})"


def _normalised(coeffs, m, growth_base):
    c = coeffs[m]
    if isinstance(c, (int, Fraction)) and isinstance(growth_base, (int, Fraction)):
        f = Fraction(c) / Fraction(growth_base) ** m
        return mp.mpf(f.numerator) / f.denominator
    return mp.mpf(c) / mp.mpf(growth_base) ** m


def fit_window(coeffs, form, M, K=None, prec=50):
    """Solve the square window system for the amplitudes at window end M.

    coeffs[m] is the exact (or high-precision) coefficient of order m; the
    window uses orders M down to M - (form.count - 1).  Returns a FitResult;
    a singular window raises ValueError naming the window.
    """
    n = form.count
    lo = M - n + 1
    if lo < 1:
        raise ValueError(f"window [{lo}, {M}] reaches below order 1")
    if M >= len(coeffs):
        raise ValueError(f"window end {M} beyond the supplied series")
    dps = max(prec, 50) + 5 * n
    with mp.workdps(dps):
        rows = []
        rhs = []
        for m in range(M, lo - 1, -1):
            rows.append([t.value(m) for t in form.terms])
            rhs.append(_normalised(coeffs, m, form.growth_base))
        A = mp.matrix(rows)
        try:
            sol = mp.lu_solve(A, mp.matrix(rhs))
        except ZeroDivisionError:
            raise ValueError(f"singular fit window [{lo}, {M}]") from None
        cond = mp.mnorm(A, 1) * mp.mnorm(A ** -1, 1)
        return FitResult(M, K, form, [+a for a in sol], +cond)


def fit_scan(coeffs, form, m_values, K=None, prec=50):
    """fit_window at each window end in m_values (extrapolation input)."""
    return [fit_window(coeffs, form, M, K, prec) for M in m_values]


def minimal_puncture_form(K, growth_base=4):
    """The ansatz sum a_j m^-j + sum b_j m^(-1/2-j), j = 0..K."""
    return AsymptoticForm.power_family(growth_base, 0, K + 1) + (
        AsymptoticForm.power_family(growth_base, Fraction(-1, 2), K + 1)
    )


def partial_sum_amplitude(coeffs, x_c, correction_exponents, m_values=None, prec=50):
    """Estimate P(x_c) = sum p_m x_c^m from partial sums.

    Fits S_M = P + sum_j b_j M^{e_j} on square windows of consecutive M;
    returns [(M, estimate of P)] for each window end (default: the largest
    usable M only).
    """
    n = 1 + len(correction_exponents)
    top = len(coeffs) - 1
    if m_values is None:
        m_values = [top]
    dps = max(prec, 50) + 5 * n
    with mp.workdps(dps):
        xc = (
            mp.mpf(Fraction(x_c).numerator) / Fraction(x_c).denominator
            if isinstance(x_c, (int, Fraction))
            else mp.mpf(x_c)
        )
        partial = []
        acc = mp.mpf(0)
        for m, c in enumerate(coeffs):
            if isinstance(c, (int, Fraction)) and isinstance(x_c, (int, Fraction)):
                f = Fraction(c) * Fraction(x_c) ** m
                acc += mp.mpf(f.numerator) / f.denominator
            else:
                acc += mp.mpf(c) * xc ** m
            partial.append(+acc)
        out = []
        for M in m_values:
            if M - n + 1 < 1 and n > 1:
                raise ValueError(f"window end {M} too small for {n} unknowns")
            rows = []
            rhs = []
            for m in range(M, M - n, -1):
                rows.append(
                    [mp.mpf(1)]
                    + [
                        mp.mpf(m)
                        ** (
                            mp.mpf(e.numerator) / e.denominator
                            if isinstance(e, Fraction)
                            else mp.mpf(e)
                        )
                        for e in correction_exponents
                    ]
                )
                rhs.append(partial[m])
            sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
            out.append((M, +sol[0]))
        return out


def arbitrary_form(k, K, growth_base=4):
    """Coefficient ansatz of the once-punctured arbitrary-size class.

    p_m / 4^m = sum_{j<=K} m^{3k/2 - j} (a_j + (b_j + c_j log m) / sqrt(m)):
    power, power-1/2 and power-1/2-with-log families, K+1 terms each.
    """
    g = Fraction(3 * k, 2)
    return (
        AsymptoticForm.power_family(growth_base, g, K + 1)
        + AsymptoticForm.power_family(growth_base, g - Fraction(1, 2), K + 1)
        + AsymptoticForm.power_family(
            growth_base, g - Fraction(1, 2), K + 1, modifier="log_m"
        )
    )


def log_amplitude_check(coeffs, table, k=0, K=1, M=None, prec=50):
    """Fit the log-corrected ansatz and report the leading log amplitude.

    Returns a dict with the fitted leading amplitudes a_0, b_0, c_0 (the
    coefficient of m^{3k/2-1/2} log m) and "ratio" = c_0 / A_k with A_k the
    k-th amplitude from the supplied table.  Precision is limited by the
    series length; a window too short for the requested K raises ValueError.
    """
    form = arbitrary_form(k, K)
    if M is None:
        M = len(coeffs) - 1
    if M - form.count + 1 < 1:
        raise ValueError(
            f"series too short for K={K}: needs {form.count} orders below {M}"
        )
    fit = fit_window(coeffs, form, M, K, prec)
    a0 = fit.amplitudes[0]
    b0 = fit.amplitudes[K + 1]
    c0 = fit.amplitudes[2 * (K + 1)]
    ref = table.A[k]
    ref = ref.value() if hasattr(ref, "value") else mp.mpf(ref)
    return {"a0": a0, "b0": b0, "c0": c0, "ratio": c0 / ref, "fit": fit}
