"""Exact truncated power series over integers and rationals.

Everything in this module is exact: integer series, rational series,
rational polynomials, bivariate series in (x, q), and "jet" series whose
coefficients are polynomials in eps = q - 1 truncated at a fixed order.
Floats never appear here.
"""

from __future__ import annotations

import math
from fractions import Fraction


class TruncationError(ValueError):
    """Requested truncation order exceeds what the inputs carry."""


def _as_list(coeffs, trunc):
    out = list(coeffs)
    if len(out) > trunc + 1:
        out = out[: trunc + 1]
    while len(out) < trunc + 1:
        out.append(0)
    return out


class IntegerSeries:
    """Truncated power series with arbitrary-precision integer coefficients.

    ``coefficients[m]`` is the coefficient of x^m; the list always has
    exactly ``truncation_order + 1`` entries.
    """

    def __init__(self, coefficients, truncation_order=None):
        if truncation_order is None:
            truncation_order = len(coefficients) - 1
        self.coefficients = [int(c) for c in _as_list(coefficients, truncation_order)]
        self.truncation_order = truncation_order

    def __getitem__(self, m):
        return self.coefficients[m]

    def __len__(self):
        return len(self.coefficients)

    def __eq__(self, other):
        return (
            isinstance(other, type(self))
            and self.truncation_order == other.truncation_order
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coefficients[:8])
        return f"{type(self).__name__}([{head}, ...], order={self.truncation_order})"

    def __add__(self, other):
        trunc = min(self.truncation_order, other.truncation_order)
        return type(self)(
            [a + b for a, b in zip(self.coefficients, other.coefficients)], trunc
        )

    def __sub__(self, other):
        trunc = min(self.truncation_order, other.truncation_order)
        return type(self)(
            [a - b for a, b in zip(self.coefficients, other.coefficients)], trunc
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)([c * other for c in self.coefficients], self.truncation_order)
        trunc = min(self.truncation_order, other.truncation_order)
        return series_mul(self, other, trunc)

    __rmul__ = __mul__

    def truncate(self, trunc):
        if trunc > self.truncation_order:
            raise TruncationError(
                f"cannot extend truncation {self.truncation_order} to {trunc}"
            )
        return type(self)(self.coefficients[: trunc + 1], trunc)

    def to_rational(self):
        return RationalSeries([Fraction(c) for c in self.coefficients], self.truncation_order)


class RationalSeries(IntegerSeries):
    """Truncated power series with exact rational coefficients.

    ``Fraction`` keeps every entry fully reduced, which is the invariant
    this type promises.
    """

    def __init__(self, coefficients, truncation_order=None):
        if truncation_order is None:
            truncation_order = len(coefficients) - 1
        self.coefficients = [
            Fraction(c) for c in _as_list(coefficients, truncation_order)
        ]
        self.truncation_order = truncation_order

    def to_rational(self):
        return self

    def to_integer(self):
        if any(c.denominator != 1 for c in self.coefficients):
            raise ValueError("series has non-integer coefficients")
        return IntegerSeries([int(c) for c in self.coefficients], self.truncation_order)


def series_mul(a, b, trunc):
    """Cauchy product of two series, truncated at ``trunc``. Exact."""
    if trunc > min(a.truncation_order, b.truncation_order):
        raise TruncationError(
            "requested truncation exceeds the truncation of the inputs"
        )
    ca, cb = a.coefficients, b.coefficients
    out = [0] * (trunc + 1)
    for i in range(trunc + 1):
        ai = ca[i]
        if not ai:
            continue
        for j in range(trunc + 1 - i):
            if cb[j]:
                out[i + j] += ai * cb[j]
    cls = RationalSeries if isinstance(a, RationalSeries) or isinstance(b, RationalSeries) else IntegerSeries
    return cls(out, trunc)


def series_reciprocal(a, trunc):
    """1 / a truncated at ``trunc``; requires a unit constant term."""
    c0 = a.coefficients[0]
    if c0 == 0:
        raise ValueError("series has zero constant term, not invertible")
    inv0 = Fraction(1, 1) / c0
    out = [inv0] + [Fraction(0)] * trunc
    ca = a.coefficients
    for n in range(1, trunc + 1):
        s = sum(ca[k] * out[n - k] for k in range(1, min(n, a.truncation_order) + 1))
        out[n] = -inv0 * s
    res = RationalSeries(out, trunc)
    if all(c.denominator == 1 for c in out):
        return res
    return res


class RationalPolynomial:
    """Polynomial with exact rational coefficients.

    Trailing zeros are trimmed so the leading coefficient is nonzero unless
    the polynomial is identically zero.
    """

    def __init__(self, coefficients):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = coeffs

    @property
    def degree(self):
        return len(self.coefficients) - 1 if self.coefficients else -1

    def __getitem__(self, i):
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __eq__(self, other):
        return isinstance(other, RationalPolynomial) and self.coefficients == other.coefficients

    def __repr__(self):
        return f"RationalPolynomial({self.coefficients})"

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial([self[i] - other[i] for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coefficients])
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1 or 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def to_series(self, trunc):
        return RationalSeries(self.coefficients, trunc)


def algebraic_power(g, alpha, trunc):
    """Taylor expansion of g(x)**alpha as an exact RationalSeries.

    Uses the coefficient recurrence implied by f'*g = alpha*g'*f with
    f(0) = g(0)**alpha.  Requires g(0) != 0 (no Taylor branch otherwise);
    non-integer alpha additionally requires g(0) = 1 so the result stays
    rational.
    """
    if isinstance(g, (list, tuple)):
        g = RationalPolynomial(g)
    alpha = Fraction(alpha)
    g0 = g[0]
    if g0 == 0:
        raise ValueError("g(0) = 0: no Taylor branch for g**alpha")
    if g0 != 1 and alpha.denominator != 1:
        raise ValueError("non-integer exponent needs g(0) = 1 for a rational result")
    c = [Fraction(g0) ** alpha if alpha.denominator == 1 else Fraction(1)]
    deg = g.degree
    for n in range(1, trunc + 1):
        s = Fraction(0)
        for k in range(1, min(n, deg) + 1):
            s += (alpha * k - (n - k)) * g[k] * c[n - k]
        c.append(s / (n * g0))
    return RationalSeries(c, trunc)


def staircase_gf(trunc):
    """Half-perimeter generating function of staircase polygons.

    Coefficient of x^m is the Catalan number binomial(2m-2, m-1)/m for
    m >= 1 (zero at m = 0, 1), i.e. the expansion of
    (1 - 2x - sqrt(1-4x))/2.
    """
    coeffs = [0] * (trunc + 1)
    for m in range(2, trunc + 1):
        coeffs[m] = math.comb(2 * m - 2, m - 1) // m
    return IntegerSeries(coeffs, trunc)


# ---------------------------------------------------------------------------
# Bivariate series in x and q (dense q-polynomials per x-order).


class BivariateSeries:
    """Series in x whose coefficients are polynomials in q.

    ``qpolys[m][n]`` is the coefficient of x^m q^n (integers).  The q-degree
    per order is bounded by the maximal area at that half-perimeter, so the
    dense representation stays small at desk scale.
    """

    def __init__(self, qpolys, x_truncation=None):
        if x_truncation is None:
            x_truncation = len(qpolys) - 1
        polys = [list(p) for p in qpolys[: x_truncation + 1]]
        while len(polys) < x_truncation + 1:
            polys.append([])
        self.qpolys = [self._trim(p) for p in polys]
        self.x_truncation = x_truncation

    @staticmethod
    def _trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    @classmethod
    def zero(cls, x_truncation):
        return cls([[] for _ in range(x_truncation + 1)], x_truncation)

    def coefficient(self, m, n):
        p = self.qpolys[m]
        return p[n] if 0 <= n < len(p) else 0

    def __eq__(self, other):
        return (
            isinstance(other, BivariateSeries)
            and self.x_truncation == other.x_truncation
            and self.qpolys == other.qpolys
        )

    def __add__(self, other):
        trunc = min(self.x_truncation, other.x_truncation)
        out = []
        for m in range(trunc + 1):
            a, b = self.qpolys[m], other.qpolys[m]
            n = max(len(a), len(b))
            out.append([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])
        return BivariateSeries(out, trunc)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariateSeries(
                [[c * other for c in p] for p in self.qpolys], self.x_truncation
            )
        trunc = min(self.x_truncation, other.x_truncation)
        out = [[] for _ in range(trunc + 1)]
        for i in range(trunc + 1):
            pi = self.qpolys[i]
            if not pi:
                continue
            for j in range(trunc + 1 - i):
                pj = other.qpolys[j]
                if not pj:
                    continue
                tgt = out[i + j]
                need = len(pi) + len(pj) - 1
                if len(tgt) < need:
                    tgt.extend([0] * (need - len(tgt)))
                for a, ca in enumerate(pi):
                    if ca:
                        for b, cb in enumerate(pj):
                            if cb:
                                tgt[a + b] += ca * cb
        return BivariateSeries(out, trunc)

    __rmul__ = __mul__

    def shift_x(self, k):
        """Multiply by x^k."""
        out = [[] for _ in range(k)] + [list(p) for p in self.qpolys]
        return BivariateSeries(out, self.x_truncation)

    def mul_q(self):
        """Multiply by q."""
        return BivariateSeries([[0] + list(p) if p else [] for p in self.qpolys], self.x_truncation)

    def substitute_qx(self):
        """Return P(qx, q): the coefficient of x^m q^n moves to x^m q^{n+m}."""
        return BivariateSeries(
            [[0] * m + list(p) if p else [] for m, p in enumerate(self.qpolys)],
            self.x_truncation,
        )

    def dq(self):
        """Partial derivative with respect to q."""
        return BivariateSeries(
            [[n * c for n, c in enumerate(p)][1:] for p in self.qpolys],
            self.x_truncation,
        )

    def dx(self):
        """Partial derivative with respect to x (drops the top order)."""
        out = [
            [m * c for c in self.qpolys[m]] for m in range(1, self.x_truncation + 1)
        ]
        return BivariateSeries(out, self.x_truncation - 1)

    def eval_q1(self):
        """Set q = 1, giving an IntegerSeries in x."""
        return IntegerSeries([sum(p) for p in self.qpolys], self.x_truncation)

    def moment(self, k):
        """Ordinary area moment series: coefficient of x^m is sum_n n^k p_{m,n}."""
        return IntegerSeries(
            [sum(c * n ** k for n, c in enumerate(p)) for p in self.qpolys],
            self.x_truncation,
        )

    def reciprocal(self, trunc=None):
        """1 / self in Z[q][[x]]; needs constant term 1 in (x, q)."""
        if trunc is None:
            trunc = self.x_truncation
        if self.qpolys[0] != [1]:
            raise ValueError("reciprocal needs constant term exactly 1")
        out = [[1]] + [[] for _ in range(trunc)]
        for n in range(1, trunc + 1):
            acc = []
            for k in range(1, min(n, self.x_truncation) + 1):
                pk = self.qpolys[k]
                if not pk:
                    continue
                po = out[n - k]
                if not po:
                    continue
                need = len(pk) + len(po) - 1
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for a, ca in enumerate(pk):
                    if ca:
                        for b, cb in enumerate(po):
                            if cb:
                                acc[a + b] += ca * cb
            out[n] = [-c for c in acc]
        return BivariateSeries(out, trunc)


# ---------------------------------------------------------------------------
# Jet series: coefficients are polynomials in eps = q - 1, truncated.


def jet_mul(a, b, order):
    out = [0] * (order + 1)
    for i, ca in enumerate(a):
        if ca:
            for j in range(min(len(b), order + 1 - i)):
                if b[j]:
                    out[i + j] += ca * b[j]
    return out


def jet_binom_pow(n, order):
    """(1 + eps)^n truncated: [C(n,0), C(n,1), ...]."""
    return [math.comb(n, j) for j in range(order + 1)]


class JetSeries:
    """Series in x whose coefficients are eps-jets, eps = q - 1.

    ``jets[m]`` is a list of ``order + 1`` integers; entry j holds
    sum_n C(n, j) p_{m,n}, i.e. the j-th binomial (factorial-type) area
    moment at half-perimeter m.  This is the exact image of a bivariate
    series under q -> 1 + eps, truncated at eps^order.
    """

    def __init__(self, jets, order, x_truncation=None):
        if x_truncation is None:
            x_truncation = len(jets) - 1
        self.order = order
        self.jets = [list(j) + [0] * (order + 1 - len(j)) for j in jets[: x_truncation + 1]]
        while len(self.jets) < x_truncation + 1:
            self.jets.append([0] * (order + 1))
        self.x_truncation = x_truncation

    @classmethod
    def zero(cls, order, x_truncation):
        return cls([[0] * (order + 1)] * (x_truncation + 1), order, x_truncation)

    @classmethod
    def from_bivariate(cls, b, order):
        jets = []
        for p in b.qpolys:
            jet = [sum(c * math.comb(n, j) for n, c in enumerate(p)) for j in range(order + 1)]
            jets.append(jet)
        return cls(jets, order, b.x_truncation)

    def __eq__(self, other):
        return (
            isinstance(other, JetSeries)
            and self.order == other.order
            and self.x_truncation == other.x_truncation
            and self.jets == other.jets
        )

    def __add__(self, other):
        trunc = min(self.x_truncation, other.x_truncation)
        return JetSeries(
            [[a + b for a, b in zip(x, y)] for x, y in zip(self.jets, other.jets)],
            self.order,
            trunc,
        )

    def __sub__(self, other):
        trunc = min(self.x_truncation, other.x_truncation)
        return JetSeries(
            [[a - b for a, b in zip(x, y)] for x, y in zip(self.jets, other.jets)],
            self.order,
            trunc,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return JetSeries(
                [[c * other for c in j] for j in self.jets], self.order, self.x_truncation
            )
        trunc = min(self.x_truncation, other.x_truncation)
        k = self.order
        out = [[0] * (k + 1) for _ in range(trunc + 1)]
        for i in range(trunc + 1):
            ji = self.jets[i]
            if not any(ji):
                continue
            for j in range(trunc + 1 - i):
                jj = other.jets[j]
                if not any(jj):
                    continue
                tgt = out[i + j]
                for a, ca in enumerate(ji):
                    if ca:
                        for b in range(k + 1 - a):
                            if jj[b]:
                                tgt[a + b] += ca * jj[b]
        return JetSeries(out, k, trunc)

    __rmul__ = __mul__

    def shift_x(self, n):
        return JetSeries([[0] * (self.order + 1)] * n + self.jets, self.order, self.x_truncation)

    def mul_q(self):
        """Multiply by q = 1 + eps."""
        k = self.order
        out = []
        for j in self.jets:
            nj = list(j)
            for a in range(k, 0, -1):
                nj[a] += j[a - 1]
            out.append(nj)
        return JetSeries(out, k, self.x_truncation)

    def substitute_qx(self):
        """P(qx, q): multiply the jet at x^m by (1 + eps)^m."""
        k = self.order
        out = [jet_mul(j, jet_binom_pow(m, k), k) for m, j in enumerate(self.jets)]
        return JetSeries(out, k, self.x_truncation)

    def dq(self):
        """d/dq = d/deps; the top eps-order is lost."""
        return JetSeries(
            [[a * c for a, c in enumerate(j)][1:] for j in self.jets],
            self.order - 1,
            self.x_truncation,
        )

    def dx(self):
        return JetSeries(
            [[m * c for c in self.jets[m]] for m in range(1, self.x_truncation + 1)],
            self.order,
            self.x_truncation - 1,
        )

    def drop_order(self, order):
        return JetSeries([j[: order + 1] for j in self.jets], order, self.x_truncation)

    def reciprocal(self, trunc=None):
        if trunc is None:
            trunc = self.x_truncation
        k = self.order
        unit = [1] + [0] * k
        if self.jets[0] != unit:
            raise ValueError("reciprocal needs constant term exactly 1")
        out = [unit] + [[0] * (k + 1) for _ in range(trunc)]
        for n in range(1, trunc + 1):
            acc = [0] * (k + 1)
            for i in range(1, min(n, self.x_truncation) + 1):
                ji = self.jets[i]
                if not any(ji):
                    continue
                jo = out[n - i]
                for a, ca in enumerate(ji):
                    if ca:
                        for b in range(k + 1 - a):
                            if jo[b]:
                                acc[a + b] += ca * jo[b]
            out[n] = [-c for c in acc]
        return JetSeries(out, k, trunc)

    def eval_q1(self):
        return IntegerSeries([j[0] for j in self.jets], self.x_truncation)

    def moment(self, k):
        """Ordinary area moment series from the binomial jets.

        n^k = sum_j S2(k,j) j! C(n,j) converts the stored binomial moments
        exactly.
        """
        if k > self.order:
            raise ValueError(f"moment {k} needs jet order >= {k}")
        weights = [_stirling2(k, j) * math.factorial(j) for j in range(k + 1)]
        return IntegerSeries(
            [sum(w * j[i] for i, w in enumerate(weights)) for j in self.jets],
            self.x_truncation,
        )

    def factorial_moment(self, k):
        """Series of sum_n binom(n, k) p_{m,n} (exact)."""
        if k > self.order:
            raise ValueError(f"factorial moment {k} needs jet order >= {k}")
        return IntegerSeries([j[k] for j in self.jets], self.x_truncation)


def _stirling2(n, k):
    if k == 0:
        return 1 if n == 0 else 0
    return sum(
        (-1) ** (k - j) * math.comb(k, j) * j ** n for j in range(k + 1)
    ) // math.factorial(k)


# ---------------------------------------------------------------------------
# Shared series file format.


def write_series(path, series, name, extra=None):
    """Write a series in the shared text format.

    Header lines are ``# key: value`` (name, truncation, variable), then one
    line per order ``<m> <coefficient>``; bivariate series use
    ``<m> <n> <coefficient>`` triples.
    """
    lines = [f"# name: {name}"]
    if isinstance(series, BivariateSeries):
        lines.append(f"# truncation: {series.x_truncation}")
        lines.append("# variable: x q")
        for k, v in (extra or {}).items():
            lines.append(f"# {k}: {v}")
        for m, p in enumerate(series.qpolys):
            for n, c in enumerate(p):
                if c:
                    lines.append(f"{m} {n} {c}")
    else:
        lines.append(f"# truncation: {series.truncation_order}")
        lines.append("# variable: x")
        for k, v in (extra or {}).items():
            lines.append(f"# {k}: {v}")
        for m, c in enumerate(series.coefficients):
            lines.append(f"{m} {c}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_series(path):
    """Read a series file; returns (series, headers) with exact coefficients.

    Univariate files yield IntegerSeries (or RationalSeries when any
    coefficient has a slash); bivariate files yield BivariateSeries.
    """
    headers = {}
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                headers[key.strip()] = val.strip()
                continue
            rows.append(line.split())
    bivariate = any(len(r) == 3 for r in rows)
    trunc = int(headers.get("truncation", max(int(r[0]) for r in rows) if rows else 0))
    if bivariate:
        series = BivariateSeries.zero(trunc)
        for m, n, c in ((int(a), int(b), int(c)) for a, b, c in rows):
            p = series.qpolys[m]
            if len(p) <= n:
                p.extend([0] * (n + 1 - len(p)))
            p[n] = c
        return series, headers
    rational = any("/" in r[1] for r in rows)
    coeffs = [Fraction(0) if rational else 0] * (trunc + 1)
    for m, c in ((int(r[0]), r[1]) for r in rows):
        coeffs[m] = Fraction(c) if rational else int(c)
    cls = RationalSeries if rational else IntegerSeries
    return cls(coeffs, trunc), headers
