"""Exact truncated power series.

Two flavours are provided:

* :class:`Series` -- one variable ``t`` on an exponent grid of step 1 or 1/2
  (the half grid holds ``sqrt(t)``), with a bounded Laurent tail;
* :class:`Series2` -- two variables, truncated in ``t`` only, each coefficient
  an exact polynomial in ``z``.

Coefficients are :class:`fractions.Fraction`; products clear denominators and
convolve plain integers, which is where almost all the time goes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = [
    "Series",
    "Series2",
    "SeriesError",
    "sqrt_series",
    "log_series",
    "exp_series",
    "newton_solve",
    "invert_2param",
]

# deepest negative exponent index a Laurent tail may reach
MAX_TAIL = 64

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SeriesError(ArithmeticError):
    pass


def _clear(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for x in coeffs:
        if x.denominator != 1:
            den = math.lcm(den, x.denominator)
    if den == 1:
        return [x.numerator for x in coeffs], 1
    return [x.numerator * (den // x.denominator) for x in coeffs], den


def _iconv(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` terms of the product of two integer coefficient lists."""
    out = [0] * n
    lb = len(b)
    for i, x in enumerate(a):
        if i >= n:
            break
        if not x:
            continue
        m = min(lb, n - i)
        for j in range(m):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _fconv(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    ia, da = _clear(a)
    ib, db = _clear(b)
    d = da * db
    return [Fraction(v, d) for v in _iconv(ia, ib, n)]


class Series:
    """Truncated series ``sum c_k t^(k*step)`` known exactly for ``k <= prec``.

    Internally exponents are integer *indices* on the grid; ``step`` is 1 or
    1/2.  ``lo`` is the index of ``coeffs[0]`` and equals the valuation unless
    the series is zero to its precision.
    """

    __slots__ = ("den", "lo", "prec", "coeffs")

    def __init__(self, coeffs: Iterable, lo: int = 0, prec: int | None = None, den: int = 1):
        if den not in (1, 2):
            raise SeriesError("grid step must be 1 or 1/2")
        cs = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = lo + len(cs) - 1
        cs = cs[: max(0, prec - lo + 1)]
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        cs = cs[k:]
        lo += k
        if not cs:
            lo = prec + 1
        if lo < -MAX_TAIL:
            raise SeriesError("Laurent tail below the allowed bound")
        self.den = den
        self.lo = lo
        self.prec = prec
        self.coeffs = tuple(cs)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, terms: dict, trunc_order, step=1) -> "Series":
        """Build from ``{exponent: coefficient}`` with exponents as rationals."""
        den = Fraction(1) / Fraction(step)
        if den not in (1, 2):
            raise SeriesError("grid step must be 1 or 1/2")
        den = int(den)
        prec = Fraction(trunc_order) * den
        if prec.denominator != 1:
            raise SeriesError("truncation order off the grid")
        idx = {}
        for e, c in terms.items():
            k = Fraction(e) * den
            if k.denominator != 1:
                raise SeriesError(f"exponent {e} off the grid of step {step}")
            idx[int(k)] = Fraction(c)
        if not idx:
            return cls([], 0, int(prec), den)
        lo = min(idx)
        hi = max(max(idx), lo)
        return cls([idx.get(k, 0) for k in range(lo, hi + 1)], lo, int(prec), den)

    @classmethod
    def zero(cls, prec: int, den: int = 1) -> "Series":
        return cls([], 0, prec, den)

    @classmethod
    def one(cls, prec: int, den: int = 1) -> "Series":
        return cls([1], 0, prec, den)

    @classmethod
    def t(cls, prec: int, den: int = 1) -> "Series":
        """The variable ``t``; ``prec`` is given in grid indices."""
        return cls([1], den, prec, den)

    @classmethod
    def sqrt_t(cls, prec: int) -> "Series":
        return cls([1], 1, prec, 2)

    # -- basic queries ------------------------------------------------------
    @property
    def step(self) -> Fraction:
        return Fraction(1, self.den)

    @property
    def trunc_order(self) -> Fraction:
        return Fraction(self.prec, self.den)

    @property
    def valuation(self) -> int:
        """Valuation in grid indices (``prec + 1`` for a zero series)."""
        return self.lo

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k > self.prec:
            raise IndexError(f"index {k} beyond truncation {self.prec}")
        j = k - self.lo
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return _ZERO

    def coeff(self, exponent) -> Fraction:
        """Coefficient of ``t^exponent`` (exponent a rational on the grid)."""
        k = Fraction(exponent) * self.den
        if k.denominator != 1:
            raise SeriesError(f"exponent {exponent} off the grid")
        return self[int(k)]

    def coefficients(self, start: int = 0) -> list[Fraction]:
        """Dense coefficient list for indices ``start..prec``."""
        return [self[k] for k in range(start, self.prec + 1)]

    def terms(self) -> dict[Fraction, Fraction]:
        return {Fraction(self.lo + j, self.den): c for j, c in enumerate(self.coeffs) if c}

    def truncate(self, prec: int) -> "Series":
        if prec > self.prec:
            raise SeriesError("cannot raise the truncation order")
        return Series(self.coeffs, self.lo, prec, self.den)

    def regrid(self, den: int) -> "Series":
        """Same series viewed on a finer grid (1 -> 1/2)."""
        if den == self.den:
            return self
        if not (self.den == 1 and den == 2):
            raise SeriesError("can only refine an integer grid to the half grid")
        cs = []
        for c in self.coeffs:
            cs.extend((c, _ZERO))
        return Series(cs, 2 * self.lo, 2 * self.prec + 1, 2)

    def on_integer_grid(self) -> "Series":
        """Drop to the integer grid; all half-integer coefficients must vanish."""
        if self.den == 1:
            return self
        if any(self[k] for k in range(self.lo, self.prec + 1) if k % 2):
            raise SeriesError("series has half-integer exponents")
        lo = -((-self.lo) // 2)
        return Series([self[2 * k] for k in range(lo, self.prec // 2 + 1)], lo, self.prec // 2, 1)

    def odd_part_vanishes(self) -> bool:
        return all(not c for j, c in enumerate(self.coeffs) if (self.lo + j) % 2)

    def substitute_neg_sqrt(self) -> "Series":
        """``f(-sqrt t)`` for a half-grid series ``f(sqrt t)``."""
        if self.den != 2:
            raise SeriesError("needs the half grid")
        return Series([-c if (self.lo + j) % 2 else c for j, c in enumerate(self.coeffs)],
                      self.lo, self.prec, 2)

    def shift(self, k: int) -> "Series":
        """Multiply by ``t^(k*step)`` exactly."""
        return Series(self.coeffs, self.lo + k, self.prec + k, self.den)

    def __repr__(self):
        parts = []
        for e, c in self.terms().items():
            parts.append(f"{c}*t^{e}")
        return "Series(" + (" + ".join(parts) or "0") + f" + O(t^{self.trunc_order + self.step}))"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series([other], 0, self.prec, self.den)
        if not isinstance(other, Series):
            return NotImplemented
        if other.den != self.den:
            a, b = (self.regrid(2), other) if self.den == 1 else (self, other.regrid(2))
            return a == b
        p = min(self.prec, other.prec)
        lo = min(self.lo, other.lo)
        return all(self[k] == other[k] for k in range(lo, p + 1))

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            if other.den == self.den:
                return other
            if self.den == 2:
                return other.regrid(2)
            raise _Promote
        if isinstance(other, (int, Fraction)):
            # scalars are exact
            return Series([other], 0, max(self.prec, 0) + MAX_TAIL + 1, self.den)
        raise TypeError(f"cannot combine Series with {type(other).__name__}")

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.lo, self.prec, self.den)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except _Promote:
            return self.regrid(2) + other
        prec = min(self.prec, o.prec)
        lo = min(self.lo, o.lo)
        if lo > prec:
            return Series([], 0, prec, self.den)
        return Series([self[k] + o[k] for k in range(lo, prec + 1)], lo, prec, self.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Series([c * x for x in self.coeffs], self.lo, self.prec, self.den)
        try:
            o = self._coerce(other)
        except _Promote:
            return self.regrid(2) * other
        if self.is_zero() or o.is_zero():
            prec = min(self.prec, o.prec, self.prec + o.lo, o.prec + self.lo)
            return Series([], 0, prec, self.den)
        prec = min(self.prec, o.prec, self.prec + o.lo, o.prec + self.lo)
        lo = self.lo + o.lo
        n = prec - lo + 1
        if n <= 0:
            return Series([], 0, prec, self.den)
        return Series(_fconv(self.coeffs, o.coeffs, n), lo, prec, self.den)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        if self.is_zero():
            raise SeriesError("division by a series that vanishes to its truncation order")
        v = self.lo
        a = self.coeffs
        n = self.prec - v + 1
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, n):
            s = _ZERO
            for j in range(1, min(k, len(a) - 1) + 1):
                if a[j]:
                    s += a[j] * b[k - j]
            b.append(-s * inv0)
        return Series(b, -v, self.prec - 2 * v, self.den)

    def _mul_to(self, o: "Series", prec: int) -> "Series":
        lo = self.lo + o.lo
        n = prec - lo + 1
        if n <= 0 or self.is_zero() or o.is_zero():
            return Series([], 0, prec, self.den)
        return Series(_fconv(self.coeffs, o.coeffs, n), lo, prec, self.den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise SeriesError("division by zero")
            return self * (1 / Fraction(other))
        try:
            o = self._coerce(other)
        except _Promote:
            return self.regrid(2) / other
        inv = o.inverse()
        vb = o.lo
        prec = min(self.prec - vb, inv.prec + self.lo)
        return self._mul_to(inv, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        result = Series([1], 0, self.prec if self.lo >= 0 else self.prec, self.den)
        if k == 0:
            return result
        base = self
        first = True
        while k:
            if k & 1:
                result = base if first else result * base
                first = False
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> "Series":
        """d/du where u = t^step is the grid variable."""
        cs = [(self.lo + j) * c for j, c in enumerate(self.coeffs)]
        return Series(cs, self.lo - 1, self.prec - 1, self.den)

    def integral(self) -> "Series":
        """Antiderivative in the grid variable with zero constant term."""
        if self.lo <= -1 and self[-1] != 0:
            raise SeriesError("integral of a 1/u term")
        cs = [c / (self.lo + j + 1) if c else _ZERO for j, c in enumerate(self.coeffs)]
        return Series(cs, self.lo + 1, self.prec + 1, self.den)

    def evaluate(self, x, digits: int = 50):
        """Numerically evaluate the truncated sum at ``t = x`` (mpmath)."""
        import mpmath

        with mpmath.workdps(digits):
            u = mpmath.mpf(x) ** (mpmath.mpf(1) / self.den)
            return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * u ** (self.lo + j)
                               for j, c in enumerate(self.coeffs))

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for e, c in self.terms().items():
            terms.append([str(e.numerator), str(e.denominator), str(c.numerator), str(c.denominator)])
        to = self.trunc_order
        return {"grid_step": str(self.step), "trunc_order": str(to), "terms": terms}

    @classmethod
    def from_json(cls, data) -> "Series":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {Fraction(int(a), int(b)): Fraction(int(c), int(d)) for a, b, c, d in data["terms"]}
        return cls.from_dict(terms, Fraction(data["trunc_order"]), Fraction(data["grid_step"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        for k in range(min(self.lo, 0), self.prec + 1):
            w.writerow([str(Fraction(k, self.den)), str(self[k])])
        return buf.getvalue()


class _Promote(Exception):
    pass


def sqrt_series(f: Series) -> Series:
    """Square root with the positive square root of the leading coefficient."""
    if f.is_zero():
        raise SeriesError("square root of a zero series")
    if f.lo % 2:
        raise SeriesError("odd valuation on the grid")
    c0 = f.coeffs[0]
    rn, rd = math.isqrt(c0.numerator), math.isqrt(c0.denominator)
    if c0 < 0 or rn * rn != c0.numerator or rd * rd != c0.denominator:
        raise SeriesError(f"leading coefficient {c0} is not a rational square")
    h0 = Fraction(rn, rd)
    a = f.coeffs
    n = f.prec - f.lo + 1
    h = [h0]
    two_h0 = 2 * h0
    for k in range(1, n):
        s = a[k] if k < len(a) else _ZERO
        for j in range(1, k):
            s -= h[j] * h[k - j]
        h.append(s / two_h0)
    v = f.lo // 2
    return Series(h, v, v + n - 1, f.den)


def log_series(f: Series) -> Series:
    if f.lo < 0 or f[0] != 1:
        raise SeriesError("log needs constant term 1")
    return (f.derivative() / f).integral()


def exp_series(g: Series) -> Series:
    if g.lo < 0 or g[0] != 0:
        raise SeriesError("exp needs a series without constant term")
    n = g.prec + 1
    d = g.derivative()
    h = [_ONE]
    # h' = g' h, coefficientwise: k h_k = sum_{j>=1} j g_j h_{k-j}
    for k in range(1, n):
        s = _ZERO
        for j in range(1, k + 1):
            gj = d[j - 1] if j - 1 <= d.prec else _ZERO
            if gj:
                s += gj * h[k - j]
        h.append(s / k)
    return Series(h, 0, g.prec, g.den)


def _poly_eval(coeffs: Sequence[Series], x: Series) -> Series:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def newton_solve(coeffs: Sequence, init: Series, max_iter: int | None = None) -> Series:
    """Solve ``sum coeffs[k] * X**k == 0`` for a series ``X`` near ``init``.

    ``coeffs`` are Series (or scalars); ``init`` must annihilate the equation
    at order 0 and make its X-derivative a unit.
    """
    cs = [c if isinstance(c, Series) else Series([c], 0, init.prec + MAX_TAIL, init.den)
          for c in coeffs]
    dcs = [k * c for k, c in enumerate(cs)][1:]
    x = init
    prec = min([c.prec for c in cs] + [init.prec])
    x = Series(x.coeffs, x.lo, prec, x.den)
    d0 = _poly_eval(dcs, x)
    if d0.is_zero() or d0.lo != 0:
        raise SeriesError("derivative at the initial value is not a unit")
    r0 = _poly_eval(cs, x)
    if not r0.is_zero() and r0.lo <= 0:
        raise SeriesError("initial value does not solve the equation at order 0")
    limit = max_iter if max_iter is not None else prec + 2
    for _ in range(max(limit, 1)):
        r = _poly_eval(cs, x)
        if r.is_zero():
            return x
        x = x - r / _poly_eval(dcs, x)
        x = Series(x.coeffs, x.lo, prec, x.den)
    if not _poly_eval(cs, x).is_zero():
        raise SeriesError("Newton iteration did not converge")
    return x


# ---------------------------------------------------------------------------
# two variables


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _pstrip(out)


def _pstrip(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _pscale(a: tuple, c) -> tuple:
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def _peval(p: tuple, z) -> Fraction:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * z + c
    return acc


class Series2:
    """Series in ``t`` truncated at ``t^prec``, coefficients polynomials in ``z``.

    ``coeffs[n]`` is a tuple ``(c_0, c_1, ...)`` meaning ``sum c_k z^k``.
    """

    __slots__ = ("prec", "coeffs")

    def __init__(self, coeffs: Iterable, prec: int | None = None):
        cs = [_pstrip(Fraction(x) for x in p) for p in coeffs]
        if prec is None:
            prec = len(cs) - 1
        cs = cs[: prec + 1]
        cs += [()] * (prec + 1 - len(cs))
        self.prec = prec
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, poly, prec: int) -> "Series2":
        return cls([poly], prec)

    @classmethod
    def t(cls, prec: int) -> "Series2":
        return cls([(), (1,)], prec)

    @classmethod
    def z(cls, prec: int) -> "Series2":
        return cls([(0, 1)], prec)

    @classmethod
    def lift(cls, s: Series) -> "Series2":
        if s.den != 1 or s.lo < 0:
            raise SeriesError("only integer-grid power series lift")
        return cls([(s[k],) for k in range(s.prec + 1)], s.prec)

    def coeff(self, n: int, k: int | None = None):
        p = self.coeffs[n]
        if k is None:
            return p
        return p[k] if k < len(p) else _ZERO

    def z_degree(self, n: int) -> int:
        return len(self.coeffs[n]) - 1

    @property
    def valuation(self) -> int:
        for n, p in enumerate(self.coeffs):
            if p:
                return n
        return self.prec + 1

    def truncate(self, prec: int) -> "Series2":
        if prec > self.prec:
            raise SeriesError("cannot raise the truncation order")
        return Series2(self.coeffs[: prec + 1], prec)

    def at_z(self, z) -> Series:
        z = Fraction(z)
        return Series([_peval(p, z) for p in self.coeffs], 0, self.prec, 1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series2.const((other,), self.prec)
        if not isinstance(other, Series2):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.coeffs[: p + 1] == other.coeffs[: p + 1]

    __hash__ = None

    def __repr__(self):
        return f"Series2({list(self.coeffs)}, prec={self.prec})"

    def _coerce(self, other) -> "Series2":
        if isinstance(other, Series2):
            return other
        if isinstance(other, (int, Fraction)):
            return Series2.const((other,), self.prec)
        raise TypeError(f"cannot combine Series2 with {type(other).__name__}")

    def __neg__(self):
        return Series2([_pscale(p, -1) for p in self.coeffs], self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        prec = min(self.prec, o.prec)
        return Series2([_padd(self.coeffs[n], o.coeffs[n]) for n in range(prec + 1)], prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Series2([_pscale(p, c) for p in self.coeffs], self.prec)
        o = self._coerce(other)
        va, vb = self.valuation, o.valuation
        prec = min(self.prec, o.prec, self.prec + vb, o.prec + va)
        a, da = _clear2(self.coeffs)
        b, db = _clear2(o.coeffs)
        d = da * db
        out = []
        for n in range(prec + 1):
            acc: list[int] = []
            for i in range(va, n - vb + 1):
                pa, pb = a[i], b[n - i]
                if not pa or not pb:
                    continue
                need = len(pa) + len(pb) - 1
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for j, x in enumerate(pa):
                    if x:
                        for k, y in enumerate(pb):
                            if y:
                                acc[j + k] += x * y
            out.append(tuple(Fraction(v, d) for v in acc))
        return Series2(out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Series2":
        p0 = self.coeffs[0]
        if len(p0) != 1 or p0[0] == 0:
            raise SeriesError("constant term in t must be a nonzero constant in z")
        inv0 = 1 / p0[0]
        b = [(inv0,)]
        for n in range(1, self.prec + 1):
            acc: tuple = ()
            for j in range(1, n + 1):
                if self.coeffs[j] and b[n - j]:
                    acc = _padd(acc, _pmul(self.coeffs[j], b[n - j]))
            b.append(_pscale(acc, -inv0))
        return Series2(b, self.prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        v = o.valuation
        if v > o.prec:
            raise SeriesError("division by a series that vanishes to its truncation order")
        if v == 0:
            return self * o.inverse()
        # strip t^v from the divisor; the dividend must be divisible by t^v
        if any(self.coeffs[n] for n in range(min(v, self.prec + 1))):
            raise SeriesError("dividend not divisible by the divisor's t-power")
        num = Series2(self.coeffs[v:], self.prec - v)
        den = Series2(o.coeffs[v:], o.prec - v)
        return num * den.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Series2.const((1,), self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def to_json(self) -> dict:
        terms = []
        for n, p in enumerate(self.coeffs):
            for k, c in enumerate(p):
                if c:
                    terms.append([str(n), str(k), str(c.numerator), str(c.denominator)])
        return {"variables": ["t", "z"], "trunc_order": str(self.prec), "terms": terms}

    @classmethod
    def from_json(cls, data) -> "Series2":
        if isinstance(data, str):
            data = json.loads(data)
        prec = int(data["trunc_order"])
        rows: list[dict] = [dict() for _ in range(prec + 1)]
        for n, k, a, b in data["terms"]:
            rows[int(n)][int(k)] = Fraction(int(a), int(b))
        return cls([[r.get(k, 0) for k in range(max(r, default=-1) + 1)] for r in rows], prec)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t_exponent", "z_polynomial"])
        for n, p in enumerate(self.coeffs):
            w.writerow([n, " ".join(str(c) for c in p) or "0"])
        return buf.getvalue()


def _pmul(a: tuple, b: tuple) -> tuple:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pstrip(out)


def _clear2(rows) -> tuple[list[list[int]], int]:
    den = 1
    for p in rows:
        for x in p:
            if x.denominator != 1:
                den = math.lcm(den, x.denominator)
    return [[x.numerator * (den // x.denominator) for x in p] for p in rows], den


def invert_2param(
    t_unit: Callable[[Series2, Series2], Series2],
    z_unit: Callable[[Series2, Series2], Series2],
    prec: int,
) -> tuple[Series2, Series2]:
    """Invert ``t = y * t_unit(y, a)``, ``z = a * z_unit(y, a)``.

    Returns ``(y, a)`` as series in ``t`` with polynomial coefficients in
    ``z``, normalised by ``y = t + O(t^2)`` and ``a = z + O(t)``.  Both units
    must have constant term 1 at ``y = 0``.  The fixed point gains one order
    of ``t`` per pass; failing to do so raises.
    """
    y = Series2.t(0)
    a = Series2.z(0)
    for n in range(prec + 1):
        t = Series2.t(n)
        z = Series2.z(n)
        new_y = t / t_unit(Series2(y.coeffs, n), Series2(a.coeffs, n))
        new_a = z / z_unit(new_y, Series2(a.coeffs, n))
        if n > 0 and (new_y.coeffs[:n] != y.coeffs[:n] or new_a.coeffs[:n] != a.coeffs[:n]):
            raise SeriesError("parametrization does not converge order by order")
        y, a = new_y, new_a
    # one extra pass certifies the top order
    t, z = Series2.t(prec), Series2.z(prec)
    if (t / t_unit(y, a)) != y or (z / z_unit(y, a)) != a:
        raise SeriesError("fixed point not reached at the requested order")
    return y, a
