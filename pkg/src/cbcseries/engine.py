"""Term generation and certified summation for every series family.

Evaluation contract
-------------------
Each result carries two proven error components:

* ``truncation_bound``: upper bound on |true sum - partial sum|, from a
  per-family term-majorant model (see :func:`tail_bound`).
* ``rounding_bound``: upper bound on accumulated floating-point error,
  reported as terms_used * max-partial-magnitude * 10^(1 - working digits).
  Internal arithmetic runs with extra digits beyond the working precision,
  so the reported figure dominates the true rounding error by many orders
  of magnitude.

Terms are built from exact integer ingredients (binomial coefficients,
Fibonacci/Lucas numbers, harmonic numbers as rationals) and converted to
working precision once per term, for every index up to
``EXACT_TERM_LIMIT``.  Certified adaptive evaluations in practice stop well
inside that window.  Past the window a summation falls back to one of two
drift-controlled continuations: a scaled-integer (fixed-point) loop for the
slow C1/C2/J1 partial sums, or a floating ratio recurrence whose drift is
absorbed by the reported rounding bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from mpmath import mp, mpf

from cbcseries.exact import binomial, fib_lucas, fib_lucas_step, harmonic
from cbcseries.families import (
    C_FAMILIES,
    F_FAMILIES,
    G_FAMILIES,
    H_FAMILIES,
    FamilySpec,
    PhiValue,
    SurdValue,
    T_FAMILIES,
    four_alpha_pow_cmp,
    sign,
)
from cbcseries.precision import PrecisionContext, Real, UsageError

EXACT_TERM_LIMIT = 20000
DEFAULT_MAX_TERMS = 10_000_000
# past this many terms, C1/C2/J1 fixed sums switch to the scaled-integer loop
_FIXED_POINT_CUTOFF = 50000
# multiplicative safety pad on every reported tail bound, so that the bound
# stays an upper bound despite its own few-ulp evaluation error
_BOUND_PAD = "1.00000001"


class UncertifiedError(Exception):
    """No proven tail bound exists at the requested parameter point."""

    def __init__(self, spec: FamilySpec, reason: str):
        self.spec = spec
        self.reason = reason
        super().__init__(f"{spec.describe()}: {reason}")


class ConvergenceError(Exception):
    """Adaptive summation hit the term cap before certifying the target."""

    def __init__(self, spec: FamilySpec, partial: "EvalResult", target):
        self.spec = spec
        self.partial = partial
        self.target = target
        super().__init__(
            f"{spec.describe()}: could not certify target {mp.nstr(mpf(target), 8)} "
            f"within {partial.terms_used} terms "
            f"(bound reached {mp.nstr(partial.error_bound(), 8)})"
        )


@dataclass(frozen=True)
class EvalResult:
    """Outcome of a summation: value plus certified error components."""

    spec: FamilySpec
    value: Real
    terms_used: int
    truncation_bound: Real
    rounding_bound: Real
    converged: bool
    digits: int

    def error_bound(self) -> Real:
        return self.truncation_bound + self.rounding_bound


# ---------------------------------------------------------------------------
# parameter realization


def x_real(x, ctx: PrecisionContext) -> Real:
    """The x parameter as a Real at working precision (handles surds)."""
    if isinstance(x, SurdValue):
        v = ctx.real(x.coeff)
        if x.radicand != 1:
            v = v * mp.sqrt(ctx.real(x.radicand))
        return v
    return ctx.real(x)


def phi_real(phi: PhiValue, ctx: PrecisionContext) -> Real:
    """The angle parameter as a Real at working precision."""
    v = ctx.real(phi.coeff)
    if phi.times_pi:
        v = v * mp.pi
    return v


def _rational_x(spec: FamilySpec) -> Fraction:
    x = spec.x
    if isinstance(x, SurdValue):
        r = x.as_rational()
        if r is None:
            raise UsageError(
                f"{spec.family}: surd x is only representable for F1/F2 "
                "(other families need x^n rational for every n)"
            )
        return r
    return x


def _alpha_pow(k: int, ctx: PrecisionContext) -> Real:
    """alpha^k at working precision via alpha^k = (L_k + sqrt5 * F_k)/2."""
    f, ell = fib_lucas(k)
    return (ctx.real(ell) + mp.sqrt(mpf(5)) * ctx.real(f)) / 2


# ---------------------------------------------------------------------------
# the n-th summand, computed directly from exact ingredients


def term(spec: FamilySpec, n: int, ctx: PrecisionContext) -> Real:
    """The exact n-th summand of the family, evaluated in ctx.

    Integer parts (binomials, F/L numbers, harmonic numbers) are computed
    exactly and converted once; no recurrences are involved, which makes
    this the independent cross-check for the incremental streams.
    """
    if n < 0:
        raise UsageError(f"term: n must be >= 0, got {n}")
    fam = spec.family
    with ctx.workprec():
        s = sign(spec.sign_pattern(), n)
        if fam in ("F1", "F2"):
            x = x_real(spec.x, ctx)
            return s * binomial(2 * n, n) * x ** (2 * n + 1) / ((2 * n + 1) * mpf(4) ** n)
        if fam in ("F3", "F4", "F5", "F6"):
            w = n if fam in ("F5", "F6") else 1
            x = x_real(spec.x, ctx)
            return s * w * binomial(2 * n, n) * x**n / mpf(4) ** n
        if fam in T_FAMILIES:
            t = mp.tan(phi_real(spec.phi, ctx))
            c = binomial(2 * n, n)
            if fam in ("T1", "T2"):
                return s * c * t**n / ((2 * n + 1) * mpf(4) ** n)
            w = n if fam in ("T5", "T6") else 1
            return s * w * c * t**n / mpf(4) ** n
        if fam == "C1":
            x = ctx.real(spec.x)
            return s * binomial(4 * n, 2 * n) * x ** (4 * n + 1) / (4 * n + 1)
        if fam == "C2":
            x = ctx.real(spec.x)
            return s * binomial(4 * n + 2, 2 * n + 1) * x ** (4 * n + 3) / (4 * n + 3)
        if fam in G_FAMILIES:
            _, weight, seqname = spec.g_shape()
            f, ell = fib_lucas(spec.m * n + spec.s)
            sv = f if seqname == "F" else ell
            w = n if weight == "linear" else 1
            den = (2 * n + 1) if weight == "recip" else 1
            return s * w * binomial(2 * n, n) * sv / (ctx.real(spec.p) ** n * den)
        if fam in ("H1", "H2"):
            x = ctx.real(spec.x)
            return s * binomial(4 * n, 2 * n) * x**n / mpf(16) ** n
        if fam in ("H3", "H4"):
            if n == 0:
                return mpf(0)  # C(-2,-1) taken as 0 by convention
            x = ctx.real(spec.x)
            return s * binomial(4 * n - 2, 2 * n - 1) * x**n / mpf(2) ** (4 * n - 2)
        if fam == "I1":
            _, lrn = fib_lucas(spec.r * n)
            _, lr = fib_lucas(spec.r)
            return binomial(4 * n, 2 * n) * lrn / (mpf(16) ** n * ctx.real(lr) ** n)
        if fam == "I2":
            _, lr = fib_lucas(spec.r)
            return binomial(4 * n, 2 * n) / (mpf(4) ** n * ctx.real(lr) ** (2 * n))
        if fam == "I3":
            return binomial(4 * n, 2 * n) / mpf(20) ** n
        # J1
        return binomial(4 * n, 2 * n) * ctx.real(harmonic(n + 1)) / (mpf(16) ** n * (n + 1))


def term_fraction(spec: FamilySpec, n: int) -> Fraction:
    """The exact n-th summand as a Fraction, for the rational families.

    T families (and F1/F2 at genuinely irrational surd x) have no rational
    terms and raise a usage error.
    """
    if n < 0:
        raise UsageError(f"term_fraction: n must be >= 0, got {n}")
    fam = spec.family
    if fam in T_FAMILIES:
        raise UsageError("term_fraction: T-family terms are not rational")
    s = sign(spec.sign_pattern(), n)
    if fam in ("F1", "F2"):
        x = spec.x if isinstance(spec.x, SurdValue) else SurdValue(spec.x)
        rat = x.as_rational()
        if rat is None:
            raise UsageError("term_fraction: surd x gives irrational terms")
        return (
            s * binomial(2 * n, n) * rat ** (2 * n + 1) / Fraction((2 * n + 1) * 4**n)
        )
    if fam in ("F3", "F4", "F5", "F6"):
        w = n if fam in ("F5", "F6") else 1
        return s * w * binomial(2 * n, n) * _rational_x(spec) ** n / Fraction(4**n)
    if fam == "C1":
        return s * binomial(4 * n, 2 * n) * spec.x ** (4 * n + 1) / Fraction(4 * n + 1)
    if fam == "C2":
        return (
            s * binomial(4 * n + 2, 2 * n + 1) * spec.x ** (4 * n + 3) / Fraction(4 * n + 3)
        )
    if fam in G_FAMILIES:
        _, weight, seqname = spec.g_shape()
        f, ell = fib_lucas(spec.m * n + spec.s)
        sv = f if seqname == "F" else ell
        w = n if weight == "linear" else 1
        den = (2 * n + 1) if weight == "recip" else 1
        return Fraction(s * w * binomial(2 * n, n) * sv) / (spec.p**n * den)
    if fam in ("H1", "H2"):
        return s * binomial(4 * n, 2 * n) * spec.x**n / Fraction(16**n)
    if fam in ("H3", "H4"):
        if n == 0:
            return Fraction(0)
        return s * binomial(4 * n - 2, 2 * n - 1) * spec.x**n / Fraction(2 ** (4 * n - 2))
    if fam == "I1":
        _, lrn = fib_lucas(spec.r * n)
        _, lr = fib_lucas(spec.r)
        return Fraction(binomial(4 * n, 2 * n) * lrn, 16**n * lr**n)
    if fam == "I2":
        _, lr = fib_lucas(spec.r)
        return Fraction(binomial(4 * n, 2 * n), 4**n * lr ** (2 * n))
    if fam == "I3":
        return Fraction(binomial(4 * n, 2 * n), 20**n)
    return binomial(4 * n, 2 * n) * harmonic(n + 1) / Fraction(16**n * (n + 1))


# ---------------------------------------------------------------------------
# incremental term streams (exact integers up to EXACT_TERM_LIMIT)


def _stream_f12(spec: FamilySpec) -> Iterator[Tuple[int, Real]]:
    x = spec.x if isinstance(spec.x, SurdValue) else SurdValue(spec.x)
    pat = spec.sign_pattern()
    cn, cd = x.coeff.numerator, x.coeff.denominator
    dn, dd = x.radicand.numerator, x.radicand.denominator
    scale = mp.sqrt(mpf(dn) / dd) if (dn, dd) != (1, 1) else None
    c, pnum, pden, n = 1, cn, cd, 0
    while n <= EXACT_TERM_LIMIT:
        v = mpf(sign(pat, n) * c * pnum) / mpf((2 * n + 1) * pden)
        yield n, v * scale if scale is not None else v
        c = c * (2 * (2 * n + 1)) // (n + 1)
        pnum *= cn * cn * dn
        pden *= 4 * cd * cd * dd
        n += 1
    base = mpf(c * pnum) / mpf(pden)
    if scale is not None:
        base *= scale
    while True:
        yield n, sign(pat, n) * base / (2 * n + 1)
        base = base * mpf(2 * (2 * n + 1) * cn * cn * dn) / mpf(4 * (n + 1) * cd * cd * dd)
        n += 1


def _stream_f3456(spec: FamilySpec) -> Iterator[Tuple[int, Real]]:
    x = _rational_x(spec)
    an, ad = x.numerator, x.denominator
    pat = spec.sign_pattern()
    linear = spec.family in ("F5", "F6")
    c, pnum, pden, n = 1, 1, 1, 0
    while n <= EXACT_TERM_LIMIT:
        if not (linear and n == 0):
            w = n if linear else 1
            yield n, mpf(sign(pat, n) * w * c * pnum) / mpf(pden)
        c = c * (2 * (2 * n + 1)) // (n + 1)
        pnum *= an
        pden *= 4 * ad
        n += 1
    base = mpf(c * pnum) / mpf(pden)
    while True:
        w = n if linear else 1
        yield n, sign(pat, n) * w * base
        base = base * mpf(2 * (2 * n + 1) * an) / mpf(4 * (n + 1) * ad)
        n += 1


def _stream_t(spec: FamilySpec, ctx: PrecisionContext) -> Iterator[Tuple[int, Real]]:
    fam = spec.family
    t = mp.tan(phi_real(spec.phi, ctx))
    pat = spec.sign_pattern()
    recip = fam in ("T1", "T2")
    linear = fam in ("T5", "T6")
    c, p4, n = 1, 1, 0
    tpow = mpf(1)
    while n <= EXACT_TERM_LIMIT:
        if not (linear and n == 0):
            w = n if linear else 1
            den = p4 * ((2 * n + 1) if recip else 1)
            yield n, mpf(sign(pat, n) * w * c) / mpf(den) * tpow
        c = c * (2 * (2 * n + 1)) // (n + 1)
        p4 *= 4
        tpow *= t
        n += 1
    b = mpf(c) / mpf(p4)
    while True:
        w = n if linear else 1
        den = (2 * n + 1) if recip else 1
        yield n, sign(pat, n) * w * b * tpow / den
        b = b * (2 * n + 1) / (2 * n + 2)
        tpow *= t
        n += 1


def _stream_c(spec: FamilySpec) -> Iterator[Tuple[int, Real]]:
    one = spec.family == "C1"
    an, ad = spec.x.numerator, spec.x.denominator
    a4n, a4d = an**4, ad**4
    if one:
        c, pnum, pden = 1, an, ad
    else:
        c, pnum, pden = 2, an**3, ad**3
    n = 0
    while n <= EXACT_TERM_LIMIT:
        wden = (4 * n + 1) if one else (4 * n + 3)
        yield n, mpf((-1 if n % 2 else 1) * c * pnum) / mpf(wden * pden)
        if one:
            c = c * (4 * (4 * n + 1) * (4 * n + 3)) // ((2 * n + 1) * (2 * n + 2))
        else:
            c = c * (4 * (4 * n + 3) * (4 * n + 5)) // ((2 * n + 2) * (2 * n + 3))
        pnum *= a4n
        pden *= a4d
        n += 1
    base = mpf(c * pnum) / mpf(pden)
    while True:
        wden = (4 * n + 1) if one else (4 * n + 3)
        yield n, (-1 if n % 2 else 1) * base / wden
        if one:
            rn, rd = 4 * (4 * n + 1) * (4 * n + 3) * a4n, (2 * n + 1) * (2 * n + 2) * a4d
        else:
            rn, rd = 4 * (4 * n + 3) * (4 * n + 5) * a4n, (2 * n + 2) * (2 * n + 3) * a4d
        base = base * mpf(rn) / mpf(rd)
        n += 1


def _stream_g(spec: FamilySpec, ctx: PrecisionContext) -> Iterator[Tuple[int, Real]]:
    pat, weight, seqname = spec.g_shape()
    linear = weight == "linear"
    recip = weight == "recip"
    pn, pd = spec.p.numerator, spec.p.denominator
    fm, lm = fib_lucas(spec.m)
    fk, lk = fib_lucas(spec.s)
    c, pnp, pdp, n = 1, 1, 1, 0
    while n <= EXACT_TERM_LIMIT:
        sv = fk if seqname == "F" else lk
        if not (linear and n == 0):
            w = n if linear else 1
            den = pnp * ((2 * n + 1) if recip else 1)
            yield n, mpf(sign(pat, n) * w * c * sv * pdp) / mpf(den)
        c = c * (2 * (2 * n + 1)) // (n + 1)
        fk, lk = fib_lucas_step(fk, lk, fm, lm)
        pnp *= pn
        pdp *= pd
        n += 1
    b = mpf(c) / mpf(4**n)
    g = mpf(4 * pd) / mpf(pn)
    gp = g**n
    f, ell = mpf(fk), mpf(lk)
    mfm, mlm = mpf(fm), mpf(lm)
    while True:
        sv = f if seqname == "F" else ell
        w = n if linear else 1
        den = (2 * n + 1) if recip else 1
        yield n, sign(pat, n) * w * b * sv * gp / den
        b = b * (2 * n + 1) / (2 * n + 2)
        f, ell = (f * mlm + ell * mfm) / 2, (ell * mlm + 5 * f * mfm) / 2
        gp *= g
        n += 1


def _stream_h(spec: FamilySpec) -> Iterator[Tuple[int, Real]]:
    fam = spec.family
    an, ad = spec.x.numerator, spec.x.denominator
    alt = fam in ("H1", "H3")
    if fam in ("H1", "H2"):
        c, n = 1, 0
        num_extra = 1
    else:
        c, n = 2, 1  # the n = 0 summand is identically 0 and is skipped
        num_extra = 4  # 2^(4n-2) = 16^n / 4
    pnum, pden = an**n, (16 * ad) ** n
    while n <= EXACT_TERM_LIMIT:
        s = (-1 if n % 2 else 1) if alt else 1
        yield n, mpf(s * c * pnum * num_extra) / mpf(pden)
        if fam in ("H1", "H2"):
            c = c * (4 * (4 * n + 1) * (4 * n + 3)) // ((2 * n + 1) * (2 * n + 2))
        else:
            c = c * (2 * (4 * n - 1) * (4 * n + 1)) // (n * (2 * n + 1))
        pnum *= an
        pden *= 16 * ad
        n += 1
    base = mpf(c * pnum * num_extra) / mpf(pden)
    while True:
        s = (-1 if n % 2 else 1) if alt else 1
        yield n, s * base
        if fam in ("H1", "H2"):
            rn, rd = 4 * (4 * n + 1) * (4 * n + 3) * an, (2 * n + 1) * (2 * n + 2) * 16 * ad
        else:
            rn, rd = 2 * (4 * n - 1) * (4 * n + 1) * an, n * (2 * n + 1) * 16 * ad
        base = base * mpf(rn) / mpf(rd)
        n += 1


def _stream_i(spec: FamilySpec) -> Iterator[Tuple[int, Real]]:
    fam = spec.family
    c, n = 1, 0
    if fam == "I1":
        fm, lm = fib_lucas(spec.r)
        lr = lm
        # Lucas values along stride r grow like alpha^(r n), so shrink the
        # exact window in proportion to r to keep the integer sizes bounded;
        # the float continuation covers the slow large-r evaluations.
        exact_limit = min(EXACT_TERM_LIMIT, max(2000, EXACT_TERM_LIMIT // max(1, spec.r)))
        fk, lk = 0, 2
        den = 1
        while n <= exact_limit:
            yield n, mpf(c * lk) / mpf(den)
            c = c * (4 * (4 * n + 1) * (4 * n + 3)) // ((2 * n + 1) * (2 * n + 2))
            fk, lk = fib_lucas_step(fk, lk, fm, lm)
            den *= 16 * lr
            n += 1
        b = mpf(c) / mpf(16) ** n
        w = mpf(1) / mpf(lr) ** n
        f, ell = mpf(fk), mpf(lk)
        mfm, mlm = mpf(fm), mpf(lm)
        while True:
            yield n, b * ell * w
            b = b * (4 * n + 1) * (4 * n + 3) / (4 * (2 * n + 1) * (2 * n + 2))
            f, ell = (f * mlm + ell * mfm) / 2, (ell * mlm + 5 * f * mfm) / 2
            w /= lr
            n += 1
    else:
        if fam == "I2":
            _, lr = fib_lucas(spec.r)
            dstep = 4 * lr * lr
        else:
            dstep = 20
        den = 1
        while n <= EXACT_TERM_LIMIT:
            yield n, mpf(c) / mpf(den)
            c = c * (4 * (4 * n + 1) * (4 * n + 3)) // ((2 * n + 1) * (2 * n + 2))
            den *= dstep
            n += 1
        base = mpf(c) / mpf(den)
        while True:
            yield n, base
            base = base * (4 * (4 * n + 1) * (4 * n + 3)) / mpf((2 * n + 1) * (2 * n + 2) * dstep)
            n += 1


def _stream_j(spec: FamilySpec) -> Iterator[Tuple[int, Real]]:
    c, n = 1, 0
    h = Fraction(1)  # H_1
    while n <= EXACT_TERM_LIMIT:
        yield n, mpf(c * h.numerator) / mpf(16**n * (n + 1) * h.denominator)
        c = c * (4 * (4 * n + 1) * (4 * n + 3)) // ((2 * n + 1) * (2 * n + 2))
        h += Fraction(1, n + 2)
        n += 1
    b = mpf(c) / mpf(16) ** n
    hf = mpf(h.numerator) / mpf(h.denominator)
    while True:
        yield n, b * hf / (n + 1)
        b = b * (4 * n + 1) * (4 * n + 3) / (4 * (2 * n + 1) * (2 * n + 2))
        hf += mpf(1) / (n + 2)
        n += 1


def _term_stream(spec: FamilySpec, ctx: PrecisionContext) -> Iterator[Tuple[int, Real]]:
    fam = spec.family
    if fam in ("F1", "F2"):
        return _stream_f12(spec)
    if fam in F_FAMILIES:
        return _stream_f3456(spec)
    if fam in T_FAMILIES:
        return _stream_t(spec, ctx)
    if fam in C_FAMILIES:
        return _stream_c(spec)
    if fam in G_FAMILIES:
        return _stream_g(spec, ctx)
    if fam in H_FAMILIES:
        return _stream_h(spec)
    if fam in ("I1", "I2", "I3"):
        return _stream_i(spec)
    return _stream_j(spec)


# ---------------------------------------------------------------------------
# certified tail bounds


def _geometric_ratio(spec: FamilySpec, ctx: PrecisionContext) -> Real:
    """The per-family geometric ratio majorant q (valid for every index)."""
    fam = spec.family
    if fam in ("F1", "F2"):
        x = spec.x if isinstance(spec.x, SurdValue) else SurdValue(spec.x)
        return ctx.real(x.squared())
    if fam in ("F3", "F4", "F5", "F6"):
        return abs(x_real(spec.x, ctx))
    if fam in T_FAMILIES:
        return abs(mp.tan(phi_real(spec.phi, ctx)))
    if fam in C_FAMILIES:
        return 16 * ctx.real(spec.x) ** 4
    if fam in G_FAMILIES:
        return 4 * _alpha_pow(abs(spec.m), ctx) / ctx.real(spec.p)
    if fam in H_FAMILIES:
        return abs(ctx.real(spec.x))
    if fam == "I1":
        _, lr = fib_lucas(spec.r)
        return _alpha_pow(spec.r, ctx) / lr
    if fam == "I2":
        _, lr = fib_lucas(spec.r)
        return ctx.real(Fraction(4, lr * lr))
    if fam == "I3":
        return ctx.real(Fraction(4, 5))
    raise UsageError(f"no geometric ratio model for {fam}")


def tail_bound(spec: FamilySpec, N: int, ctx: PrecisionContext) -> Real:
    """Proven upper bound on |sum over n > N| of the family's terms.

    Models: a geometric-ratio majorant for the F/T/C/G/H/I families (with
    the standard central-binomial estimate C(2m,m)/4^m <= 1/sqrt(pi*m)
    sharpening the first omitted term, and an exact arithmetico-geometric
    sum for the n-weighted shapes), and an integral-comparison bound for
    J1.  Raises :class:`UncertifiedError` where the model ratio reaches 1
    (|x| = 1, |phi| = pi/4, p = 4*alpha^|m|).
    """
    if N < 0:
        raise UsageError(f"tail_bound: N must be >= 0, got {N}")
    fam = spec.family
    with ctx.workprec():
        pad = mpf(_BOUND_PAD)
        if fam == "J1":
            if N == 0:
                # |t_1| = 9/32 exactly, then the integral bound from 1
                return (mpf(9) / 32 + _j1_integral_bound(1)) * pad
            return _j1_integral_bound(N) * pad
        if fam in C_FAMILIES:
            # Alternating with strictly decreasing magnitudes on the whole
            # domain (the index factors keep the step ratio below 1 even at
            # |x| = 1/2, where the plain geometric ratio reaches 1), so the
            # first omitted term bounds the tail with no 1/(1-q) factor.
            xa = abs(ctx.real(spec.x))
            q = 16 * xa**4
            M = N + 1
            if fam == "C1":
                return q**M * xa / (mp.sqrt(2 * mp.pi * M) * (4 * M + 1)) * pad
            return q**M * 4 * xa**3 / (mp.sqrt(mp.pi * (2 * M + 1)) * (4 * M + 3)) * pad
        q = _geometric_ratio(spec, ctx)
        if not q < 1:
            raise UncertifiedError(
                spec, "term-ratio majorant reaches 1; no certified tail bound"
            )
        M = N + 1  # first omitted index
        if fam in ("F1", "F2"):
            xa = abs(x_real(spec.x, ctx))
            t_hat = xa ** (2 * M + 1) / ((2 * M + 1) * mp.sqrt(mp.pi * M))
            return t_hat / (1 - q) * pad
        if fam in ("F3", "F4"):
            t_hat = q**M / mp.sqrt(mp.pi * M)
            return t_hat / (1 - q) * pad
        if fam in ("F5", "F6"):
            # sum_{n>=M} n q^n = q^M (M(1-q) + q)/(1-q)^2, with the
            # C(2n,n)/4^n factor bounded by its value majorant at M
            return q**M * (M * (1 - q) + q) / ((1 - q) ** 2 * mp.sqrt(mp.pi * M)) * pad
        if fam in ("T1", "T2"):
            t_hat = q**M / ((2 * M + 1) * mp.sqrt(mp.pi * M))
            return t_hat / (1 - q) * pad
        if fam in ("T3", "T4"):
            t_hat = q**M / mp.sqrt(mp.pi * M)
            return t_hat / (1 - q) * pad
        if fam in ("T5", "T6"):
            return q**M * (M * (1 - q) + q) / ((1 - q) ** 2 * mp.sqrt(mp.pi * M)) * pad
        if fam in G_FAMILIES:
            kappa = _alpha_pow(abs(spec.s), ctx)
            if spec.g_shape()[2] == "F":
                kappa = kappa * 2 / mp.sqrt(mpf(5))
            else:
                kappa = kappa * 2
            weight = spec.weight()
            if weight == "recip":
                return kappa * q**M / ((2 * M + 1) * (1 - q)) * pad
            if weight == "plain":
                return kappa * q**M / (1 - q) * pad
            return kappa * q**M * (M * (1 - q) + q) / (1 - q) ** 2 * pad
        if fam in ("H1", "H2"):
            t_hat = q**M / mp.sqrt(2 * mp.pi * M)
            return t_hat / (1 - q) * pad
        if fam in ("H3", "H4"):
            t_hat = q**M / mp.sqrt(mp.pi * (2 * M - 1))
            return t_hat / (1 - q) * pad
        if fam == "I1":
            t_hat = 2 * q**M / mp.sqrt(2 * mp.pi * M)
            return t_hat / (1 - q) * pad
        # I2, I3
        t_hat = q**M / mp.sqrt(2 * mp.pi * M)
        return t_hat / (1 - q) * pad


def _j1_integral_bound(N: int) -> Real:
    """Integral comparison: sum_{n>N} t_n <= (1/sqrt(2 pi)) * 2 (ln N + 4)/sqrt(N).

    Uses t_n <= (1 + H-bound)/(n+1) * 1/sqrt(2 pi n) <= (ln t + 2)/(sqrt(2 pi) t^{3/2})
    at t = n, which is decreasing, then compares with the integral from N.
    """
    return 2 * (mp.log(N) + 4) / mp.sqrt(2 * mp.pi * N)


# ---------------------------------------------------------------------------
# summation drivers


def _rounding_bound(terms_used: int, max_partial: Real, ctx: PrecisionContext) -> Real:
    if max_partial == 0 or terms_used == 0:
        return mpf(0)
    return terms_used * max_partial * mpf(10) ** (1 - ctx.working_digits)


def sum_fixed(spec: FamilySpec, N: int, ctx: PrecisionContext) -> EvalResult:
    """Partial sum of the terms with index 0..N (inclusive).

    Never refuses: at uncertifiable parameter points the truncation bound
    is reported as +inf.  ``converged`` is always False; certified
    convergence is :func:`sum_adaptive`'s job.
    """
    if N < 0:
        raise UsageError(f"sum_fixed: N must be >= 0, got {N}")
    if spec.family in C_FAMILIES and N + 1 > _FIXED_POINT_CUTOFF:
        return _sum_fixed_point_c(spec, N, ctx)
    if spec.family == "J1" and N + 1 > _FIXED_POINT_CUTOFF:
        return _sum_fixed_point_j(spec, N, ctx)
    with ctx.workprec():
        total = mpf(0)
        max_partial = mpf(0)
        first = spec.first_index()
        if N >= first:
            stream = _term_stream(spec, ctx)
            for n, t in stream:
                if n > N:
                    break
                total += t
                a = abs(total)
                if a > max_partial:
                    max_partial = a
        try:
            trunc = tail_bound(spec, N, ctx)
        except UncertifiedError:
            trunc = mpf("inf")
        return EvalResult(
            spec=spec,
            value=+total,
            terms_used=N + 1,
            truncation_bound=trunc,
            rounding_bound=_rounding_bound(N + 1, max_partial, ctx),
            converged=False,
            digits=ctx.digits,
        )


def sum_adaptive(
    spec: FamilySpec,
    target_abs_error,
    ctx: PrecisionContext,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> EvalResult:
    """Sum until truncation + rounding bounds certify ``target_abs_error``.

    Raises :class:`UncertifiedError` at parameter points with no tail model
    and :class:`ConvergenceError` (carrying the best partial result) when
    the cap is reached first.  The stop index is minimal within the bound
    model while the exact-term window lasts; past it the convergence check
    runs every 64 terms.
    """
    if spec.at_certification_boundary():
        raise UncertifiedError(
            spec, "parameter on the domain boundary; use sum_fixed for an "
            "uncertified partial sum"
        )
    with ctx.workprec():
        target = ctx.real(target_abs_error)
        if not target > 0:
            raise UsageError("sum_adaptive: target_abs_error must be > 0")
        total = mpf(0)
        max_partial = mpf(0)
        count = 0
        last_n = -1
        stream = _term_stream(spec, ctx)
        for n, t in stream:
            total += t
            count += 1
            last_n = n
            a = abs(total)
            if a > max_partial:
                max_partial = a
            if n <= EXACT_TERM_LIMIT or count % 64 == 0:
                trunc = tail_bound(spec, n, ctx)
                rnd = _rounding_bound(n + 1, max_partial, ctx)
                if trunc + rnd <= target:
                    return EvalResult(
                        spec=spec,
                        value=+total,
                        terms_used=n + 1,
                        truncation_bound=trunc,
                        rounding_bound=rnd,
                        converged=True,
                        digits=ctx.digits,
                    )
            if count >= max_terms:
                trunc = tail_bound(spec, n, ctx)
                rnd = _rounding_bound(n + 1, max_partial, ctx)
                partial = EvalResult(
                    spec=spec,
                    value=+total,
                    terms_used=n + 1,
                    truncation_bound=trunc,
                    rounding_bound=rnd,
                    converged=False,
                    digits=ctx.digits,
                )
                raise ConvergenceError(spec, partial, target)
    raise AssertionError("unreachable: streams are infinite")


# ---------------------------------------------------------------------------
# scaled-integer partial sums for the slow bound-mode families
#
# All arithmetic below is on non-negative integers scaled by 2^B.  Each
# ratio step and each product truncates at most one unit in the last place,
# so the absolute drift after N terms is below N * 2^-B plus the propagated
# products, still many orders under the reported rounding bound.


def _fixed_point_bits(ctx: PrecisionContext) -> int:
    return int(math.ceil(3.33 * ctx.working_digits)) + 64


def _sum_fixed_point_c(spec: FamilySpec, N: int, ctx: PrecisionContext) -> EvalResult:
    one = spec.family == "C1"
    an, ad = abs(spec.x.numerator), spec.x.denominator
    a4n, a4d = an**4, ad**4
    B = _fixed_point_bits(ctx)
    if one:
        u = (an << B) // ad
    else:
        u = (2 * an**3 << B) // (3 * ad**3)
    total = 0
    max_partial = 0
    # u tracks |term_n| * 2^B with the 1/(4n+1)-style weight already folded
    # into the ratio steps below
    for n in range(N + 1):
        if n % 2:
            total -= u
        else:
            total += u
        a = -total if total < 0 else total
        if a > max_partial:
            max_partial = a
        if one:
            rn = 4 * (4 * n + 1) * (4 * n + 1) * (4 * n + 3) * a4n
            rd = (2 * n + 1) * (2 * n + 2) * (4 * n + 5) * a4d
        else:
            rn = 4 * (4 * n + 3) * (4 * n + 3) * (4 * n + 5) * a4n
            rd = (2 * n + 2) * (2 * n + 3) * (4 * n + 7) * a4d
        u = u * rn // rd
    with ctx.workprec():
        scale = mpf(2) ** (-B)
        value = mpf(total) * scale
        mp_max = mpf(max_partial) * scale
        try:
            trunc = tail_bound(spec, N, ctx)
        except UncertifiedError:
            trunc = mpf("inf")
        return EvalResult(
            spec=spec,
            value=value,
            terms_used=N + 1,
            truncation_bound=trunc,
            rounding_bound=_rounding_bound(N + 1, mp_max, ctx),
            converged=False,
            digits=ctx.digits,
        )


def _sum_fixed_point_j(spec: FamilySpec, N: int, ctx: PrecisionContext) -> EvalResult:
    B = _fixed_point_bits(ctx)
    ONE = 1 << B
    u = ONE  # C(4n,2n)/(16^n (n+1)) * 2^B at n = 0
    h = ONE  # H_{n+1} * 2^B at n = 0
    total = 0
    for n in range(N + 1):
        total += (u * h) >> B
        u = u * ((4 * n + 1) * (4 * n + 3) * (n + 1)) // (4 * (2 * n + 1) * (2 * n + 2) * (n + 2))
        h += ONE // (n + 2)
    with ctx.workprec():
        value = mpf(total) / mpf(ONE)
        trunc = tail_bound(spec, N, ctx)
        return EvalResult(
            spec=spec,
            value=value,
            terms_used=N + 1,
            truncation_bound=trunc,
            rounding_bound=_rounding_bound(N + 1, value, ctx),
            converged=False,
            digits=ctx.digits,
        )
