"""Scalars carrying the deformation parameter hbar.

A scalar is either

* numeric mode: a plain rational (hbar has been fixed to a rational value,
  which the surrounding ``HContext`` remembers), or
* symbolic mode: an ``HPoly``, a Laurent polynomial in hbar over Q whose
  exponents must stay inside an explicit window [lo, hi].

Out-of-window contributions raise ``HbarWindowError``; nothing is ever
silently truncated.  The window exists because tau-type series contribute
hbar^{-w} at weight w while F = hbar^2 log(tau) shifts exponents up, so a
computation at weight cap W normally lives inside [-(W+2), W+2]; wider
windows are an explicit constructor choice.

All values are immutable; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rational import Rational, format_rational, parse_rational


class HbarWindowError(ArithmeticError):
    """A Laurent coefficient fell outside the declared exponent window."""


class HbarValueError(ArithmeticError):
    """Invalid numeric use of hbar (e.g. dividing by hbar when it is 0)."""


def default_window(weight_cap: int) -> tuple[int, int]:
    """Default hbar-exponent window for computations at a given weight cap."""
    return (-(weight_cap + 2), weight_cap + 2)


@dataclass(frozen=True)
class HContext:
    """Describes how hbar is treated: fixed rational, or formal in a window."""

    mode: str
    lo: int | None = None
    hi: int | None = None
    value: object | None = None

    @staticmethod
    def symbolic(lo: int, hi: int) -> "HContext":
        if lo > 0 or hi < 0:
            raise ValueError("window must contain exponent 0")
        return HContext("symbolic", lo=lo, hi=hi)

    @staticmethod
    def numeric(value) -> "HContext":
        return HContext("numeric", value=Rational(value))

    @property
    def is_numeric(self) -> bool:
        return self.mode == "numeric"

    def scalar(self, num, den=1):
        """Lift a rational into this context's scalar type."""
        r = Rational(num, den)
        if self.is_numeric:
            return r
        return HPoly(self, {0: r})

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def hbar_pow(self, k: int):
        """hbar^k as a scalar; k may be negative."""
        if self.is_numeric:
            if self.value == 0 and k < 0:
                raise HbarValueError("negative power of hbar at hbar = 0")
            return self.value ** k
        return HPoly(self, {k: Rational(1)})

    def hbar(self):
        return self.hbar_pow(1)


def _coerce_terms(other):
    if isinstance(other, (int, Rational)):
        return {0: Rational(other)}
    return None


class HPoly:
    """Laurent polynomial in hbar over Q, exponents confined to a window."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: HContext, terms: dict, _clean=False):
        if ctx.is_numeric:
            raise TypeError("HPoly requires a symbolic context")
        if _clean:
            self.ctx = ctx
            self.terms = terms
            return
        clean = {}
        for e, c in terms.items():
            c = Rational(c)
            if c == 0:
                continue
            if e < ctx.lo or e > ctx.hi:
                raise HbarWindowError(
                    f"hbar^{e} outside window [{ctx.lo}, {ctx.hi}]"
                )
            clean[e] = c
        self.ctx = ctx
        self.terms = clean

    def _check_ctx(self, other: "HPoly"):
        if self.ctx != other.ctx:
            raise ValueError("mixed hbar contexts")

    def __add__(self, other):
        lift = _coerce_terms(other)
        if lift is not None:
            other = HPoly(self.ctx, lift)
        elif not isinstance(other, HPoly):
            return NotImplemented
        self._check_ctx(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return HPoly(self.ctx, terms, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return HPoly(self.ctx, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if isinstance(other, HPoly):
            return self.__add__(-other)
        lift = _coerce_terms(other)
        if lift is None:
            return NotImplemented
        return self.__add__(HPoly(self.ctx, {0: -lift[0]}))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        lift = _coerce_terms(other)
        if lift is not None:
            r = lift[0]
            if r == 0:
                return HPoly(self.ctx, {}, _clean=True)
            return HPoly(
                self.ctx, {e: c * r for e, c in self.terms.items()}, _clean=True
            )
        if not isinstance(other, HPoly):
            return NotImplemented
        self._check_ctx(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return HPoly(self.ctx, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Rational(1) / Rational(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inv_unit() ** (-n)
        out = HPoly(self.ctx, {0: Rational(1)})
        base = self
        for _ in range(n):
            out = out * base
        return out

    def __eq__(self, other):
        lift = _coerce_terms(other)
        if lift is not None:
            other = HPoly(self.ctx, lift)
        elif not isinstance(other, HPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, k: int) -> "HPoly":
        """Multiply by hbar^k (window-checked)."""
        return HPoly(self.ctx, {e + k: c for e, c in self.terms.items()})

    def inv_unit(self) -> "HPoly":
        """Invert a monomial c*hbar^e; other shapes are not units here."""
        if len(self.terms) != 1:
            raise HbarValueError("only hbar-monomials are invertible")
        (e, c), = self.terms.items()
        return HPoly(self.ctx, {-e: Rational(1) / c})

    def eval_at(self, value):
        """Substitute a rational value for hbar."""
        v = Rational(value)
        total = Rational(0)
        for e, c in self.terms.items():
            if v == 0 and e < 0:
                raise HbarValueError("negative power of hbar at hbar = 0")
            total += c * v ** e
        return total

    def min_exp(self) -> int | None:
        return min(self.terms) if self.terms else None

    def max_exp(self) -> int | None:
        return max(self.terms) if self.terms else None

    def even_only(self) -> bool:
        """True when only even hbar powers appear."""
        return all(e % 2 == 0 for e in self.terms)

    def __repr__(self):
        return f"HPoly({render_scalar(self)})"


# ---------------------------------------------------------------------------
# helpers treating "scalar" = int | Rational | HPoly uniformly

def scalar_is_zero(c) -> bool:
    if isinstance(c, HPoly):
        return c.is_zero()
    return c == 0


def scalar_inv(c):
    """Multiplicative inverse of a unit scalar."""
    if isinstance(c, HPoly):
        return c.inv_unit()
    if c == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    return Rational(1) / Rational(c)


def scalar_eval(c, value):
    """Value of a scalar at hbar = value (no-op for plain rationals)."""
    if isinstance(c, HPoly):
        return c.eval_at(value)
    return Rational(c)


def scalar_even_only(c) -> bool:
    if isinstance(c, HPoly):
        return c.even_only()
    return True  # hbar-free


def render_scalar(c) -> str:
    if not isinstance(c, HPoly):
        return format_rational(Rational(c))
    if not c.terms:
        return "0"
    bits = []
    for e in sorted(c.terms):
        r = c.terms[e]
        if e == 0:
            bits.append(format_rational(r))
        else:
            h = "hbar" if e == 1 else f"hbar^{e}"
            bits.append(h if r == 1 else f"{format_rational(r)}*{h}")
    return " + ".join(bits).replace("+ -", "- ")


def scalar_to_json(c):
    if isinstance(c, HPoly):
        return {str(e): format_rational(r) for e, r in sorted(c.terms.items())}
    return format_rational(Rational(c))


def scalar_from_json(ctx: HContext, obj):
    if isinstance(obj, str):
        r = parse_rational(obj)
        return ctx.scalar(r)
    if isinstance(obj, dict):
        if ctx.is_numeric:
            total = Rational(0)
            for e, r in obj.items():
                total += parse_rational(r) * ctx.hbar_pow(int(e))
            return total
        return HPoly(ctx, {int(e): parse_rational(r) for e, r in obj.items()})
    raise ValueError(f"bad scalar encoding: {obj!r}")
