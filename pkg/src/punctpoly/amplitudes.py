"""Exact amplitude calculus for punctured polygon models.

Everything follows from one rational recurrence: with gamma_k = (k - theta)/phi
(theta = 1/3, phi = 2/3 for area-perimeter models in this universality class),
the numbers c_k defined by c_0 = 1 and

    gamma_{k-1} c_{k-1} + (1/4) sum_{l=0}^{k} c_{k-l} c_l = 0

determine the area-amplitude coefficients f_k = c_k f_1^k f_0^{1-k} and the
coefficient amplitudes A_k = (-1)^k k! f_k x_c^{-gamma_k} / Gamma(gamma_k).
Puncturing a polygon class multiplies amplitudes by explicit factors:

    minimal punctures:  A_k^{(r)}   = A_{k+r} x_c^{2r} / r!
    fixed total size s: A_k^{(r,s)} = (A_{k+r}/r!) x_c^s [x^s] P(x)^r
    arbitrary size:     A_k^{(r)}   = A_{k+r} P(x_c)^r / r!

where P is the unpunctured half-perimeter generating function.  The module
also evaluates the universal amplitude ratios, the limit-law moments, the
area amplitude series of punctured classes, the Airy scaling function
F(s) = (1/16) d/ds log Ai(2^{8/3} s) with its Riccati identity, and the
Cauchy-product asymptotics underlying all of the above.

For the staircase model every quantity is an exact rational times a power
of sqrt(pi), kept symbolic via PiPower; numeric models (the rooted
self-avoiding polygon constants) evaluate through mpmath.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp


class PiPower:
    """Exact value q * pi**(p/2) with q rational and p an integer."""

    __slots__ = ("q", "p")

    def __init__(self, q, p=0):
        self.q = Fraction(q)
        self.p = p

    def __repr__(self):
        if self.p == 0:
            return f"{self.q}"
        return f"{self.q}*pi^({self.p}/2)"

    def __eq__(self, other):
        if isinstance(other, PiPower):
            if self.q == other.q == 0:
                return True
            return self.q == other.q and self.p == other.p
        return self.p == 0 and self.q == other

    def __mul__(self, other):
        if isinstance(other, PiPower):
            return PiPower(self.q * other.q, self.p + other.p)
        return PiPower(self.q * Fraction(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiPower):
            if other.q == 0:
                raise ZeroDivisionError("division by zero PiPower")
            return PiPower(self.q / other.q, self.p - other.p)
        return PiPower(self.q / Fraction(other), self.p)

    def __pow__(self, n):
        return PiPower(self.q ** n, self.p * n)

    def __neg__(self):
        return PiPower(-self.q, self.p)

    def value(self):
        return mp.mpf(self.q.numerator) / self.q.denominator * mp.pi ** (
            mp.mpf(self.p) / 2
        )


def exact_gamma(x):
    """Gamma(x) for integer or half-integer rational x, as a PiPower.

    Returns None at the poles (non-positive integers).
    """
    x = Fraction(x)
    if x.denominator == 1:
        if x <= 0:
            return None
        return PiPower(math.factorial(x.numerator - 1))
    if x.denominator != 2:
        raise ValueError("exact_gamma handles integer and half-integer x only")
    # walk to Gamma(1/2) = sqrt(pi)
    coeff = Fraction(1)
    while x > Fraction(1, 2):
        x -= 1
        coeff *= x
    while x < Fraction(1, 2):
        coeff /= x
        x += 1
    return PiPower(coeff, 1)


class ModelConstants:
    """Critical point and leading area-amplitudes of a polygon model."""

    def __init__(self, name, x_c, f0, f1, theta=Fraction(1, 3), phi=Fraction(2, 3), exact=True):
        self.name = name
        self.x_c = x_c
        self.f0 = f0
        self.f1 = f1
        self.theta = Fraction(theta)
        self.phi = Fraction(phi)
        self.exact = exact
        if not 0 < self.phi < 1:
            raise ValueError("phi must lie in (0, 1)")

    def gamma(self, k):
        return (k - self.theta) / self.phi


STAIRCASE = ModelConstants(
    "staircase", Fraction(1, 4), Fraction(-1), Fraction(-1, 64)
)


def rooted_sap_constants():
    """Numeric constants of rooted self-avoiding polygons (square lattice)."""
    x_c = mp.mpf("0.14368062927")
    return ModelConstants(
        "rooted-sap", x_c, mp.mpf("-0.929607"), -x_c / (8 * mp.pi), exact=False
    )


def _exact_power(base, exponent):
    """base**exponent as an exact Fraction for half-integer exponents.

    Python's Fraction ** Fraction silently degrades to float for
    non-integer exponents, so half-integer powers of perfect-square
    rationals must take the square root explicitly.
    """
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if exponent.denominator != 2:
        raise ValueError("only integer and half-integer exponents supported")
    squared = base ** exponent.numerator
    num = math.isqrt(squared.numerator)
    den = math.isqrt(squared.denominator)
    if num * num != squared.numerator or den * den != squared.denominator:
        raise ValueError(f"{base}**{exponent} is irrational")
    return Fraction(num, den)


def ck_sequence(k_max):
    """The exact rationals c_0..c_k_max of the quadratic amplitude recurrence."""
    theta, phi = Fraction(1, 3), Fraction(2, 3)
    c = [Fraction(1)]
    for k in range(1, k_max + 1):
        gamma_prev = (k - 1 - theta) / phi
        # the l-sum contains 2 c_k c_0; solve for c_k
        s = sum(c[k - l] * c[l] for l in range(1, k))
        c.append(-2 * (gamma_prev * c[k - 1] + Fraction(1, 4) * s))
    return c


class AmplitudeTable:
    """gamma_k, c_k, f_k and A_k for one model, k <= k_max."""

    def __init__(self, mc, k_max):
        self.model = mc
        self.k_max = k_max
        self.c = ck_sequence(k_max)
        self.gamma = [mc.gamma(k) for k in range(k_max + 1)]
        if mc.exact:
            self.f = [c * mc.f1 ** k * mc.f0 ** (1 - k) for k, c in enumerate(self.c)]
        else:
            self.f = [
                mp.mpf(c.numerator) / c.denominator * mc.f1 ** k * mc.f0 ** (1 - k)
                for k, c in enumerate(self.c)
            ]
        self.A = [self._amp(k) for k in range(k_max + 1)]

    def _amp(self, k):
        g = self.gamma[k]
        if self.model.exact:
            gam = exact_gamma(g)
            if gam is None:
                return None
            num = PiPower(
                Fraction((-1) ** k * math.factorial(k))
                * self.f[k]
                * _exact_power(Fraction(self.model.x_c), -g)
            )
            return num / gam
        gv = mp.mpf(g.numerator) / g.denominator
        if gv <= 0 and gv == int(gv):
            return None
        return (
            (-1) ** k
            * mp.factorial(k)
            * self.f[k]
            * self.model.x_c ** (-gv)
            / mp.gamma(gv)
        )


def amplitude_chain(mc=STAIRCASE, k_max=12):
    """Build the amplitude table f_k, A_k for a model."""
    return AmplitudeTable(mc, k_max)


def punctured_amplitudes(table, r, kind, k_max=None, s=None, P=None, P_at_xc=None):
    """Amplitudes A_k^{(r)} (or A_k^{(r,s)}) of the r-punctured class.

    kind is "minimal", "fixed" (requires s and the series P) or "arbitrary"
    (requires P_at_xc; only valid for theta > 0).
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    if k_max is None:
        k_max = table.k_max - r
    if k_max + r > table.k_max:
        raise ValueError("amplitude table too short for k_max + r")
    mc = table.model
    rf = math.factorial(r)
    if kind == "minimal":
        factor = Fraction(mc.x_c) ** (2 * r) / rf if mc.exact else mc.x_c ** (2 * r) / rf
    elif kind == "fixed":
        if s is None or P is None:
            raise ValueError("kind='fixed' needs s and the series P")
        prod = [Fraction(1)] + [Fraction(0)] * s
        for _ in range(r):
            nxt = [Fraction(0)] * (s + 1)
            for i, a in enumerate(prod):
                if a:
                    for j in range(s + 1 - i):
                        b = P[j]
                        if b:
                            nxt[i + j] += a * b
            prod = nxt
        coeff = prod[s]
        factor = Fraction(mc.x_c) ** s * coeff / rf if mc.exact else mc.x_c ** s * coeff / rf
    elif kind == "arbitrary":
        if mc.theta <= 0:
            raise ValueError("arbitrary-size punctures need theta > 0")
        if P_at_xc is None:
            raise ValueError("kind='arbitrary' needs P_at_xc")
        factor = (
            Fraction(P_at_xc) ** r / rf if mc.exact else mp.mpf(P_at_xc) ** r / rf
        )
    else:
        raise ValueError(f"unknown puncture kind {kind!r}")
    out = []
    for k in range(k_max + 1):
        a = table.A[k + r]
        out.append(None if a is None else a * factor)
    return out


def universal_ratios(r, k_max, table=None):
    """Ratios D_k^{(r)} / (D_1^{(r)})^k, D_k^{(r)} = A_{k+r}/(k! A_r).

    These are independent of x_c, f_0, f_1 (universal); returned as PiPower
    for exact models, floats otherwise.
    """
    if table is None:
        table = amplitude_chain(STAIRCASE, k_max + r)
    if k_max + r > table.k_max:
        raise ValueError("amplitude table too short")
    a_r = table.A[r]
    d = [table.A[k + r] / (math.factorial(k) * a_r) for k in range(k_max + 1)]
    return [d[k] / d[1] ** k for k in range(k_max + 1)]


def limit_law_moments(table, r, kind, k_max=None, s=None, P=None, P_at_xc=None):
    """Moments of the limiting area law of the r-punctured class.

    Returns a dict with both the ratio normalisation stated in the source
    material ("ratio": A_k^{(r)}/A_r, which is not 1 at k=0) and the
    conventional one ("normalised": A_k^{(r)}/A_0^{(r)}), plus a Carleman
    partial-sum report for the normalised moments.
    """
    amps = punctured_amplitudes(table, r, kind, k_max, s=s, P=P, P_at_xc=P_at_xc)
    a_r = table.A[r]
    ratio = [None if a is None else a / a_r for a in amps]
    a0 = amps[0]
    normalised = [None if a is None else a / a0 for a in amps]

    def carleman_partial_sums(K):
        # sum_{k<=K} M_{2k}^{-1/(2k)}: divergence <=> moment determinacy
        out = []
        acc = mp.mpf(0)
        for k in range(1, K + 1):
            if 2 * k >= len(normalised) or normalised[2 * k] is None:
                break
            m2k = normalised[2 * k]
            v = m2k.value() if isinstance(m2k, PiPower) else mp.mpf(m2k)
            acc += v ** (mp.mpf(-1) / (2 * k))
            out.append(acc)
        return out

    return {
        "ratio": ratio,
        "normalised": normalised,
        "carleman_partial_sums": carleman_partial_sums,
    }


def area_amplitude_series_punctured(table, r, kind, k_max=None, s=None, P=None, P_at_xc=None):
    """Coefficients of the area amplitude series of the punctured class.

    Returns [(k, coeff)] with coeff the multiplier of z^{-gamma_k}, k >= r:
    coeff = prefactor * (k)_r * f_k, with (k)_r = k(k-1)...(k-r+1) and the
    same kind-dependent prefactor as the amplitudes, times (-1)^r.
    """
    if k_max is None:
        k_max = table.k_max
    if k_max > table.k_max:
        raise ValueError("amplitude table too short")
    mc = table.model
    rf = math.factorial(r)
    if kind == "minimal":
        pref = Fraction(mc.x_c) ** (2 * r) if mc.exact else mc.x_c ** (2 * r)
    elif kind == "fixed":
        amps = punctured_amplitudes(table, r, "fixed", 0, s=s, P=P)
        # recover the exact prefactor x_c^s [x^s] P^r from the k=0 amplitude
        pref = rf * amps[0] / table.A[r]
        if isinstance(pref, PiPower):
            assert pref.p == 0
            pref = pref.q
    elif kind == "arbitrary":
        pref = (
            Fraction(P_at_xc) ** r if mc.exact else mp.mpf(P_at_xc) ** r
        )
    else:
        raise ValueError(f"unknown puncture kind {kind!r}")
    pref = pref * Fraction((-1) ** r, rf)
    out = []
    for k in range(r, k_max + 1):
        falling = math.perm(k, r)
        out.append((k, pref * falling * table.f[k]))
    return out


def scaling_function_transform(series_r0):
    """The scaling-function transform F -> (1/24) z F' - (1/48) F, termwise.

    Input and output are coefficient lists [(k, coeff)] of sums of
    c_k z^{-gamma_k} terms; differentiating z^{-gamma_k} gives
    -gamma_k z^{-gamma_k - 1} and z * that recombines with exponent shift
    gamma_k + 1 = gamma_{k + 3/2}; for the half-perimeter variable used
    here the transform acts termwise as c_k -> -c_k (gamma_k/24 + 1/48).
    """
    out = []
    for k, coeff in series_r0:
        g = STAIRCASE.gamma(k)
        out.append((k, coeff * (-(Fraction(g) / 24 + Fraction(1, 48)))))
    return out


# ---------------------------------------------------------------------------
# Airy function and the scaling-function identities


def airy_ai(z, prec=50):
    """Ai(z) and Ai'(z): Maclaurin series for |z| <= 7, asymptotics beyond."""
    with mp.workdps(prec + 15):
        z = mp.mpf(z)
        if abs(z) <= mp.mpf(7):
            one_third = mp.mpf(1) / 3
            a = mp.mpf(3) ** (-mp.mpf(2) / 3) / mp.gamma(mp.mpf(2) / 3)
            b = mp.mpf(3) ** (-one_third) / mp.gamma(one_third)
            f = mp.mpf(1)
            g = z
            fp = mp.mpf(0)
            gp = mp.mpf(1)
            tf = mp.mpf(1)
            tg = z
            z3 = z ** 3
            for k in range(1, 90):
                tf = tf * z3 / (3 * k * (3 * k - 1))
                tg = tg * z3 / ((3 * k + 1) * 3 * k)
                f += tf
                g += tg
                if z != 0:
                    fp += tf * (3 * k) / z
                    gp += tg * (3 * k + 1) / z
            ai = a * f - b * g
            aip = a * fp - b * gp
            return +ai, +aip
        if z < 0:
            raise ValueError("asymptotic branch implemented for z > 0 only")
        zeta = mp.mpf(2) / 3 * z ** mp.mpf("1.5")
        pre = mp.exp(-zeta) / (2 * mp.sqrt(mp.pi) * z ** mp.mpf("0.25"))
        prep = -(z ** mp.mpf("0.25")) * mp.exp(-zeta) / (2 * mp.sqrt(mp.pi))
        su = mp.mpf(1)
        sv = mp.mpf(1)
        u = mp.mpf(1)
        best = abs(u)
        for k in range(1, 80):
            u = u * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216 * k * (2 * k - 1))
            term = u / zeta ** k
            if abs(term) > best:
                break  # truncate at smallest term
            best = abs(term)
            v = (6 * k + 1) * term / (1 - 6 * k)
            su += (-1) ** k * term
            sv += (-1) ** k * v
        return +(pre * su), +(prep * sv)


_AIRY_C = None


def airy_first_zero(prec=50):
    """Smallest-modulus zero of Ai (negative), by bisection."""
    with mp.workdps(prec + 10):
        lo, hi = mp.mpf("-2.5"), mp.mpf("-2.0")
        flo = airy_ai(lo, prec)[0]
        for _ in range(prec * 4):
            mid = (lo + hi) / 2
            fm = airy_ai(mid, prec)[0]
            if fm == 0:
                return mid
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return +((lo + hi) / 2)


class ScalingFunctionEval:
    """F, F', F^{(1)} and the Riccati residual on a grid of s-values."""

    def __init__(self, s_grid, prec=50):
        c = mp.mpf(2) ** (mp.mpf(8) / 3)
        self.s0 = airy_first_zero(prec) / c
        self.grid = []
        self.F = []
        self.Fp = []
        self.F1 = []
        margin = mp.mpf("0.05")
        for s in s_grid:
            s = mp.mpf(s)
            if s <= self.s0 + margin:
                raise ValueError(
                    f"s={s} too close to the scaling-function pole at {self.s0}"
                )
            z = c * s
            ai, aip = airy_ai(z, prec)
            u = aip / ai
            f = c * u / 16
            fp = c * c * (z - u * u) / 16
            self.grid.append(s)
            self.F.append(f)
            self.Fp.append(fp)
            self.F1.append(s * fp / 24 - f / 48)

    def riccati_residual(self, i, f0=-1, f1=Fraction(-1, 64)):
        """F^2 - 4 f1 F' - f0^2 s at grid point i (zero for the staircase)."""
        f1v = mp.mpf(f1.numerator) / f1.denominator if isinstance(f1, Fraction) else mp.mpf(f1)
        return self.F[i] ** 2 - 4 * f1v * self.Fp[i] - mp.mpf(f0) ** 2 * self.grid[i]


def airy_scaling(s_grid, prec=50):
    """Evaluate the staircase scaling functions on a grid (s > s_0)."""
    return ScalingFunctionEval(s_grid, prec)


def cauchy_asymptotics_check(gamma, delta, n_max, x_c=Fraction(1, 4), checkpoints=None):
    """Ratio r_n = [x^n](f*g) / (g(x_c) f_n) for synthetic power-law sequences.

    f_n = x_c^{-n} n^{gamma-1}, g_n = x_c^{-n} n^{delta-1} for n >= 1, and
    both sequences take the value 1 at n = 0 (any nonzero constant term is
    admissible and keeps g(x_c) finite).  Requires delta < 0 < gamma - delta - 1
    ... precisely: delta < 0 and gamma > delta + 1.  r_n -> 1.
    """
    if not (delta < 0 and gamma > delta + 1):
        raise ValueError("need delta < 0 and gamma > delta + 1")
    if checkpoints is None:
        checkpoints = [n_max]
    with mp.workdps(30):
        # g(x_c) = 1 + sum_{n>=1} n^{delta-1} = 1 + zeta(1 - delta)
        g_at_xc = 1 + mp.zeta(1 - delta)
        fs = [mp.mpf(1)] + [mp.mpf(n) ** (gamma - 1) for n in range(1, n_max + 1)]
        gs = [mp.mpf(1)] + [mp.mpf(n) ** (delta - 1) for n in range(1, n_max + 1)]
        out = []
        for n in checkpoints:
            conv = mp.fsum(fs[n - j] * gs[j] for j in range(n + 1))
            out.append(conv / (g_at_xc * fs[n]))
        return out
