"""Truncated Laurent series over a finite field, for local expansions at
places of curves.

A series knows its valuation and an absolute precision: coefficients are
stored for exponents val, val+1, ..., prec-1.  All operations track the
worst-case precision of the result.
"""

from .errors import DivisionByZero, NoSquareRoot

DEFAULT_PREC = 40


class Series:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec):
        """coeffs[k] is the coefficient of t^(val+k); exponents >= prec unknown."""
        self.field = field
        coeffs = list(coeffs)
        # strip known-zero leading terms
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            val += 1
        del coeffs[max(0, prec - val):]
        self.val = val if coeffs else prec
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def zero(cls, field, prec=DEFAULT_PREC):
        return cls(field, prec, [], prec)

    @classmethod
    def constant(cls, field, c, prec=DEFAULT_PREC):
        return cls(field, 0, [c], prec)

    @classmethod
    def t(cls, field, prec=DEFAULT_PREC):
        return cls(field, 1, [field.one], prec)

    def is_zero(self):
        """True when no nonzero coefficient is known (could be O(t^prec))."""
        return not self.coeffs

    def coefficient(self, k):
        if k >= self.prec:
            raise ValueError(f"coefficient of t^{k} beyond precision {self.prec}")
        if self.val <= k < self.val + len(self.coeffs):
            return self.coeffs[k - self.val]
        return self.field.zero

    def valuation(self):
        if self.is_zero():
            raise DivisionByZero("valuation of (numerically) zero series")
        return self.val

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        ends = [lo]
        if self.coeffs:
            ends.append(self.val + len(self.coeffs))
        if other.coeffs:
            ends.append(other.val + len(other.coeffs))
        hi = min(prec, max(ends))
        out = [self.field.zero] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            k = self.val + i - lo
            if k < len(out):
                out[k] = out[k] + c
        for i, c in enumerate(other.coeffs):
            k = other.val + i - lo
            if k < len(out):
                out[k] = out[k] + c
        return Series(self.field, lo, out, prec)

    def __neg__(self):
        return Series(self.field, self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        prec = min(self.prec + other.val, other.prec + self.val)
        if self.is_zero() or other.is_zero():
            return Series(self.field, prec, [], prec)
        lo = self.val + other.val
        n = min(prec - lo, len(self.coeffs) + len(other.coeffs) - 1)
        out = [self.field.zero] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= n:
                    break
                out[k] = out[k] + a * b
        return Series(self.field, lo, out, prec)

    def scale(self, c):
        return Series(self.field, self.val, [c * a for a in self.coeffs], self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        return Series(self.field, self.val + k, self.coeffs, self.prec + k)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero series")
        a0 = self.coeffs[0]
        n = self.prec - self.val  # relative precision carries over
        inv0 = a0.inv()
        out = [inv0] + [self.field.zero] * (n - 1)
        for k in range(1, n):
            acc = self.field.zero
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out[k] = -inv0 * acc
        return Series(self.field, -self.val, out, n - self.val)

    def __truediv__(self, other):
        return self * other.inv()

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return Series(self.field, self.val, self.coeffs[:max(0, prec - self.val)], prec)

    def sqrt(self):
        """Square root with the same field's conventions: odd characteristic,
        even valuation, square leading coefficient (Newton iteration)."""
        if self.is_zero():
            return self
        if self.field.char == 2:
            raise NoSquareRoot("char-2 series square roots are not needed here")
        if self.val % 2:
            raise NoSquareRoot("odd valuation")
        body = Series(self.field, 0, self.coeffs, self.prec - self.val)
        c0 = body.coeffs[0]
        r0 = c0.sqrt()  # raises NoSquareRoot if not a square
        n = body.prec
        half = (self.field.one + self.field.one).inv()
        r = Series.constant(self.field, r0, n)
        known = 1
        while known < n:
            known = min(2 * known, n)
            # Newton doubles the number of correct coefficients per step; pad
            # the iterate and declare the doubled precision explicitly (the
            # tracked worst case would stay stuck at the initial precision).
            padded = [r.coefficient(i) if i < r.prec else self.field.zero
                      for i in range(known)]
            r = Series(self.field, 0, padded, known)
            r = (r + body.truncate(known) / r).scale(half)
        return r.truncate(n).shift(self.val // 2)

    def __repr__(self):
        terms = [f"({c!r})t^{self.val + i}"
                 for i, c in enumerate(self.coeffs) if not c.is_zero()]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.prec})"


EXACT = 10 ** 9  # precision marker for exact (polynomial) inputs


def poly_at_series(f, s):
    """Evaluate the univariate Poly f at the series s (Horner)."""
    field = s.field
    acc = Series(field, EXACT, [], EXACT)
    for c in reversed(f.coeffs):
        acc = acc * s + Series.constant(field, c, EXACT)
    return acc
