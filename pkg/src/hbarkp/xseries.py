"""Truncated power series in the distinguished variable x.

An ``XSeries`` stores coefficients of x^0..x^valid, where ``valid`` <= cap
is the number of leading coefficients that are actually trustworthy.  Every
x-differentiation eats one order (the top stored coefficient of the
derivative would need an unknown one), so ``diff`` decrements ``valid``;
arithmetic combines valid orders as a minimum and reading past ``valid``
raises.  This bookkeeping is what keeps exactness honest once initial data
get differentiated, inverted and recombined.

Coefficients are scalars in the sense of ``hscalar`` (rationals, or Laurent
polynomials in hbar).  Instances are immutable.
"""

from __future__ import annotations

from .hscalar import HContext, HPoly, scalar_inv, scalar_is_zero
from .rational import Rational


class OrderExhaustedError(ArithmeticError):
    """Asked for an x-coefficient beyond the trustworthy order."""


_SCALARS = (int, Rational, HPoly)


class XSeries:
    __slots__ = ("ctx", "cap", "valid", "coeffs")

    def __init__(self, ctx: HContext, cap: int, coeffs, valid: int | None = None):
        if valid is None:
            valid = cap
        if valid < 0:
            raise OrderExhaustedError("series has no trustworthy coefficients")
        if valid > cap:
            raise ValueError("valid order exceeds cap")
        coeffs = tuple(coeffs)[: valid + 1]
        if len(coeffs) < valid + 1:
            coeffs = coeffs + (Rational(0),) * (valid + 1 - len(coeffs))
        self.ctx = ctx
        self.cap = cap
        self.valid = valid
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @staticmethod
    def constant(ctx: HContext, cap: int, value) -> "XSeries":
        return XSeries(ctx, cap, (value,) + (Rational(0),) * cap)

    @staticmethod
    def zero(ctx: HContext, cap: int) -> "XSeries":
        return XSeries.constant(ctx, cap, Rational(0))

    @staticmethod
    def one(ctx: HContext, cap: int) -> "XSeries":
        return XSeries.constant(ctx, cap, Rational(1))

    @staticmethod
    def x(ctx: HContext, cap: int) -> "XSeries":
        if cap < 1:
            raise ValueError("cap too small for x")
        return XSeries(ctx, cap, (Rational(0), Rational(1)) + (Rational(0),) * (cap - 1))

    # -- access -------------------------------------------------------------

    def coeff(self, j: int):
        if j < 0:
            raise IndexError(j)
        if j > self.valid:
            raise OrderExhaustedError(
                f"x^{j} beyond valid order {self.valid}"
            )
        return self.coeffs[j]

    def constant_term(self):
        return self.coeff(0)

    def is_zero(self) -> bool:
        """Zero through the valid order."""
        return all(scalar_is_zero(c) for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _join(self, other):
        if self.ctx != other.ctx:
            raise ValueError("mixed hbar contexts")
        if self.cap != other.cap:
            raise ValueError("mixed x caps")
        return min(self.valid, other.valid)

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = XSeries.constant(self.ctx, self.cap, other)
        elif not isinstance(other, XSeries):
            return NotImplemented
        v = self._join(other)
        return XSeries(
            self.ctx,
            self.cap,
            tuple(self.coeffs[j] + other.coeffs[j] for j in range(v + 1)),
            valid=v,
        )

    __radd__ = __add__

    def __neg__(self):
        return XSeries(
            self.ctx, self.cap, tuple(-c for c in self.coeffs), valid=self.valid
        )

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            other = XSeries.constant(self.ctx, self.cap, other)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, XSeries):
            return NotImplemented
        v = self._join(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for j in range(v + 1):
            s = a[0] * b[j]
            for i in range(1, j + 1):
                s = s + a[i] * b[j - i]
            out.append(s)
        return XSeries(self.ctx, self.cap, tuple(out), valid=v)

    __rmul__ = __mul__

    def scale(self, s) -> "XSeries":
        return XSeries(
            self.ctx, self.cap, tuple(c * s for c in self.coeffs), valid=self.valid
        )

    def pow_int(self, n: int) -> "XSeries":
        if n < 0:
            return self.inverse().pow_int(-n)
        out = XSeries.one(self.ctx, self.cap)
        # keep the base's valid order even for n = 0 consumers
        out = XSeries(self.ctx, self.cap, out.coeffs[: self.valid + 1], valid=self.valid)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus -----------------------------------------------------------

    def diff(self) -> "XSeries":
        """d/dx; costs one valid order."""
        if self.valid == 0:
            raise OrderExhaustedError("cannot differentiate: valid order 0")
        v = self.valid - 1
        return XSeries(
            self.ctx,
            self.cap,
            tuple((j + 1) * self.coeffs[j + 1] for j in range(v + 1)),
            valid=v,
        )

    def diff_n(self, n: int) -> "XSeries":
        out = self
        for _ in range(n):
            out = out.diff()
        return out

    def inverse(self) -> "XSeries":
        """Multiplicative inverse; constant term must be a unit."""
        c0 = self.coeffs[0]
        r0 = scalar_inv(c0)
        out = [r0]
        for n in range(1, self.valid + 1):
            s = self.coeffs[1] * out[n - 1]
            for k in range(2, n + 1):
                s = s + self.coeffs[k] * out[n - k]
            out.append(-(r0 * s))
        return XSeries(self.ctx, self.cap, tuple(out), valid=self.valid)

    def exp(self) -> "XSeries":
        """Formal exponential; requires zero constant term (keeps Q exact)."""
        if not scalar_is_zero(self.coeffs[0]):
            raise ValueError("exp needs zero constant term")
        out = [self.ctx.one()]
        for n in range(1, self.valid + 1):
            s = None
            for k in range(1, n + 1):
                t = (k * self.coeffs[k]) * out[n - k]
                s = t if s is None else s + t
            out.append(s * Rational(1, n))
        return XSeries(self.ctx, self.cap, tuple(out), valid=self.valid)

    def log(self) -> "XSeries":
        """Formal logarithm; requires constant term 1."""
        if not scalar_is_zero(self.coeffs[0] - 1):
            raise ValueError("log needs constant term 1")
        out = [self.ctx.zero()]
        for n in range(1, self.valid + 1):
            s = self.coeffs[n]
            for k in range(1, n):
                s = s - Rational(k, n) * (out[k] * self.coeffs[n - k])
            out.append(s)
        return XSeries(self.ctx, self.cap, tuple(out), valid=self.valid)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        """Equality through the common valid order."""
        if isinstance(other, _SCALARS):
            other = XSeries.constant(self.ctx, self.cap, other)
        elif not isinstance(other, XSeries):
            return NotImplemented
        v = self._join(other)
        return all(
            scalar_is_zero(self.coeffs[j] - other.coeffs[j]) for j in range(v + 1)
        )

    __hash__ = None  # unhashable: equality is order-relative

    def __repr__(self):
        return f"XSeries(valid={self.valid}, coeffs={list(self.coeffs)})"
