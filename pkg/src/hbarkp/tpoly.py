"""Sparse polynomials in the KP times t_1, t_2, ... with optional z-slots.

A monomial is a pair of exponent tuples: one for the times (t_k exponent
a_k contributes k*a_k to the weight) and one for the slot variables
zeta_1..zeta_m, each slot standing for one expansion variable z_i^{-1}.
Storage is graded-truncated: monomials above the weight cap or above the
per-slot z-degree cap are dropped, which is sound for graded series
because multiplication only raises both degrees.

Coefficients may be scalars (rationals / hbar-Laurent polynomials) or
``XSeries`` values (for assembled tau/F objects that still depend on x).
Zero scalar coefficients are never stored; zero ``XSeries`` coefficients
are kept when their valid order is below the cap, because "zero so far"
at low valid order is information that min-combining must not lose.

Both caps are explicit constructor parameters, never ambient state, and
instances are immutable.
"""

from __future__ import annotations

from math import comb

from .hscalar import HContext, HPoly, scalar_is_zero, scalar_inv
from .rational import Rational
from .xseries import XSeries

_SCALARS = (int, Rational, HPoly)


class CapError(ValueError):
    """A construction requires more weight / z-degree than the caps allow."""


def _trim(exps) -> tuple:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def weight_of(texp: tuple) -> int:
    return sum((k + 1) * a for k, a in enumerate(texp))


def _droppable(c) -> bool:
    if isinstance(c, XSeries):
        return c.valid == c.cap and c.is_zero()
    return scalar_is_zero(c)


def _coeff_is_zero(c) -> bool:
    if isinstance(c, XSeries):
        return c.is_zero()
    return scalar_is_zero(c)


class TPoly:
    __slots__ = ("ctx", "weight_cap", "z_cap", "nslots", "terms")

    def __init__(self, ctx: HContext, weight_cap: int, z_cap: int = 0,
                 nslots: int = 0, terms: dict | None = None, _clean=False):
        self.ctx = ctx
        self.weight_cap = weight_cap
        self.z_cap = z_cap
        self.nslots = nslots
        if terms is None:
            terms = {}
        if _clean:
            self.terms = terms
            return
        clean = {}
        for (texp, zexp), c in terms.items():
            texp = _trim(texp)
            zexp = _trim(zexp)
            if len(zexp) > nslots:
                raise CapError("more z-slots than declared")
            if weight_of(texp) > weight_cap or any(d > z_cap for d in zexp):
                continue
            if _droppable(c):
                continue
            clean[(texp, zexp)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    def _like(self, terms, _clean=False) -> "TPoly":
        return TPoly(self.ctx, self.weight_cap, self.z_cap, self.nslots,
                     terms, _clean=_clean)

    @staticmethod
    def zero(ctx, weight_cap, z_cap=0, nslots=0) -> "TPoly":
        return TPoly(ctx, weight_cap, z_cap, nslots, {}, _clean=True)

    @staticmethod
    def one(ctx, weight_cap, z_cap=0, nslots=0) -> "TPoly":
        return TPoly.constant(ctx, weight_cap, Rational(1), z_cap, nslots)

    @staticmethod
    def constant(ctx, weight_cap, value, z_cap=0, nslots=0) -> "TPoly":
        return TPoly(ctx, weight_cap, z_cap, nslots, {((), ()): value})

    @staticmethod
    def var_t(ctx, weight_cap, k: int, z_cap=0, nslots=0) -> "TPoly":
        """The time variable t_k (k >= 1)."""
        if k < 1:
            raise ValueError("times are indexed from 1")
        if k > weight_cap:
            raise CapError(f"t_{k} exceeds weight cap {weight_cap}")
        texp = (0,) * (k - 1) + (1,)
        return TPoly(ctx, weight_cap, z_cap, nslots, {(texp, ()): Rational(1)})

    @staticmethod
    def var_zeta(ctx, weight_cap, slot: int, z_cap, nslots, power: int = 1) -> "TPoly":
        """zeta_slot^power, the slot variable standing for z_slot^{-1}."""
        if not (0 <= slot < nslots):
            raise ValueError("slot out of range")
        if power > z_cap:
            raise CapError("zeta power exceeds z cap")
        zexp = (0,) * slot + (power,)
        return TPoly(ctx, weight_cap, z_cap, nslots, {((), zexp): Rational(1)})

    def monomial_times(self, parts) -> "TPoly":
        """Product t_{p1} t_{p2} ... for a part list (used by basis builders)."""
        exps = {}
        for p in parts:
            exps[p - 1] = exps.get(p - 1, 0) + 1
        if not parts:
            texp = ()
        else:
            texp = tuple(exps.get(i, 0) for i in range(max(exps) + 1))
        if weight_of(texp) > self.weight_cap:
            raise CapError("monomial exceeds weight cap")
        return self._like({(texp, ()): Rational(1)})

    # -- structure ----------------------------------------------------------

    def _same_shape(self, other: "TPoly"):
        if (self.ctx, self.weight_cap, self.z_cap, self.nslots) != (
            other.ctx, other.weight_cap, other.z_cap, other.nslots
        ):
            raise ValueError("incompatible polynomial shapes (ctx/caps/slots)")

    def with_slots(self, nslots: int, z_cap: int) -> "TPoly":
        """Re-embed with a new slot configuration (existing slots must fit)."""
        for (_, zexp) in self.terms:
            if len(zexp) > nslots or any(d > z_cap for d in zexp):
                raise CapError("existing z monomials do not fit new slots")
        return TPoly(self.ctx, self.weight_cap, z_cap, nslots,
                     dict(self.terms), _clean=True)

    def coeff(self, parts=(), zexp=()):
        """Coefficient of the monomial t_{parts} * zeta^zexp (0 if absent)."""
        exps = {}
        for p in parts:
            exps[p - 1] = exps.get(p - 1, 0) + 1
        texp = tuple(exps.get(i, 0) for i in range(max(exps) + 1)) if parts else ()
        key = (_trim(texp), _trim(zexp))
        return self.terms.get(key, self.ctx.zero())

    def coeff_exp(self, texp, zexp=()):
        key = (_trim(texp), _trim(zexp))
        return self.terms.get(key, self.ctx.zero())

    def constant_coeff(self):
        return self.terms.get(((), ()), self.ctx.zero())

    def monomials(self):
        return sorted(self.terms)

    def max_weight(self) -> int:
        return max((weight_of(t) for (t, _) in self.terms), default=0)

    def is_zero(self) -> bool:
        return all(_coeff_is_zero(c) for c in self.terms.values())

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return self
            other = TPoly.constant(self.ctx, self.weight_cap, other,
                                   self.z_cap, self.nslots)
        elif not isinstance(other, TPoly):
            return NotImplemented
        self._same_shape(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            if key in terms:
                s = terms[key] + c
                if _droppable(s):
                    del terms[key]
                else:
                    terms[key] = s
            else:
                terms[key] = c
        return self._like(terms, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            return self.__add__(-Rational(other))
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if isinstance(other, XSeries):
            return self.scale(other)
        if not isinstance(other, TPoly):
            return NotImplemented
        self._same_shape(other)
        W, Z = self.weight_cap, self.z_cap
        items1 = sorted(
            ((weight_of(t), t, z, c) for (t, z), c in self.terms.items()),
            key=lambda it: it[0],
        )
        items2 = sorted(
            ((weight_of(t), t, z, c) for (t, z), c in other.terms.items()),
            key=lambda it: it[0],
        )
        out: dict = {}
        for w1, t1, z1, c1 in items1:
            budget = W - w1
            for w2, t2, z2, c2 in items2:
                if w2 > budget:
                    break
                if z1 and z2:
                    n = max(len(z1), len(z2))
                    za = z1 + (0,) * (n - len(z1))
                    zb = z2 + (0,) * (n - len(z2))
                    zk = tuple(a + b for a, b in zip(za, zb))
                    if any(d > Z for d in zk):
                        continue
                    zk = _trim(zk)
                else:
                    zk = z1 or z2
                n = max(len(t1), len(t2))
                ta = t1 + (0,) * (n - len(t1))
                tb = t2 + (0,) * (n - len(t2))
                key = (tuple(a + b for a, b in zip(ta, tb)), zk)
                p = c1 * c2
                if key in out:
                    out[key] = out[key] + p
                else:
                    out[key] = p
        clean = {k: c for k, c in out.items() if not _droppable(c)}
        return self._like(clean, _clean=True)

    __rmul__ = __mul__

    def scale(self, s) -> "TPoly":
        """Multiply every coefficient by a scalar or an XSeries."""
        if isinstance(s, _SCALARS) and scalar_is_zero(s):
            return self._like({}, _clean=True)
        out = {}
        for key, c in self.terms.items():
            p = c * s
            if not _droppable(p):
                out[key] = p
        return self._like(out, _clean=True)

    def pow_int(self, n: int) -> "TPoly":
        out = TPoly.one(self.ctx, self.weight_cap, self.z_cap, self.nslots)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = TPoly.constant(self.ctx, self.weight_cap, other,
                                   self.z_cap, self.nslots)
        elif not isinstance(other, TPoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- calculus and substitutions ------------------------------------------

    def diff_t(self, k: int) -> "TPoly":
        """Partial derivative with respect to t_k."""
        out = {}
        i = k - 1
        for (texp, zexp), c in self.terms.items():
            if i >= len(texp) or texp[i] == 0:
                continue
            a = texp[i]
            nt = list(texp)
            nt[i] = a - 1
            out[(_trim(nt), zexp)] = a * c
        return self._like(out, _clean=True)

    def diff_parts(self, parts) -> "TPoly":
        out = self
        for p in parts:
            out = out.diff_t(p)
        return out

    def times_over_hbar(self) -> "TPoly":
        """Substitute t_k -> t_k / hbar (coefficient picks up hbar^-deg)."""
        out = {}
        for (texp, zexp), c in self.terms.items():
            n = sum(texp)
            out[(texp, zexp)] = c * self.ctx.hbar_pow(-n) if n else c
        return self._like(out, _clean=True)

    def map_coeffs(self, fn) -> "TPoly":
        out = {}
        for key, c in self.terms.items():
            p = fn(c)
            if not _droppable(p):
                out[key] = p
        return self._like(out, _clean=True)

    def zeta_coefficient(self, slot: int, power: int) -> "TPoly":
        """Coefficient of zeta_slot^power (slot exponent removed)."""
        out = {}
        for (texp, zexp), c in self.terms.items():
            d = zexp[slot] if slot < len(zexp) else 0
            if d != power:
                continue
            nz = list(zexp)
            if slot < len(nz):
                nz[slot] = 0
            out[(texp, _trim(nz))] = c
        return self._like(out, _clean=True)

    def restrict_weight(self, bound: int) -> "TPoly":
        """Keep monomials with t-weight + total z-degree <= bound."""
        out = {
            (t, z): c
            for (t, z), c in self.terms.items()
            if weight_of(t) + sum(z) <= bound
        }
        return self._like(out, _clean=True)

    # -- exp / log ----------------------------------------------------------

    def exp(self) -> "TPoly":
        """Graded exponential; requires no constant monomial."""
        if ((), ()) in self.terms and not _coeff_is_zero(self.terms[((), ())]):
            raise ValueError("exp needs zero constant monomial")
        acc = TPoly.one(self.ctx, self.weight_cap, self.z_cap, self.nslots)
        term = acc
        n = 1
        while True:
            term = (term * self).scale(Rational(1, n))
            if not term.terms:
                break
            acc = acc + term
            n += 1
        return acc

    def log_unit(self) -> "TPoly":
        """Graded logarithm; the constant coefficient must be invertible."""
        c0 = self.constant_coeff()
        if isinstance(c0, XSeries):
            c0_inv = c0.inverse()
            log_c0 = c0.log()
        else:
            c0_inv = scalar_inv(c0)
            log_c0 = None
        rest = self.scale(c0_inv) - 1
        acc = TPoly.zero(self.ctx, self.weight_cap, self.z_cap, self.nslots)
        term = TPoly.one(self.ctx, self.weight_cap, self.z_cap, self.nslots)
        n = 1
        while True:
            term = term * rest
            if not term.terms:
                break
            acc = acc + term.scale(Rational((-1) ** (n + 1), n))
            n += 1
        if isinstance(c0, XSeries):
            acc = acc + TPoly.constant(self.ctx, self.weight_cap, log_c0,
                                       self.z_cap, self.nslots)
        elif not scalar_is_zero(c0 - 1):
            raise ValueError("scalar constant coefficient must be 1 for log")
        return acc

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        from .hscalar import render_scalar

        if not self.terms:
            return "0"
        bits = []
        for (texp, zexp) in sorted(self.terms, key=lambda k: (weight_of(k[0]) + sum(k[1]), k)):
            c = self.terms[(texp, zexp)]
            vars_ = []
            for i, a in enumerate(texp):
                if a == 1:
                    vars_.append(f"t{i + 1}")
                elif a > 1:
                    vars_.append(f"t{i + 1}^{a}")
            for i, d in enumerate(zexp):
                if d == 1:
                    vars_.append(f"zeta{i + 1}")
                elif d > 1:
                    vars_.append(f"zeta{i + 1}^{d}")
            mono = "*".join(vars_) if vars_ else "1"
            if isinstance(c, XSeries):
                cs = f"[{', '.join(str(v) for v in c.coeffs)}]"
            else:
                cs = render_scalar(c)
                if "+" in cs or "-" in cs[1:]:
                    cs = f"({cs})"
            bits.append(f"{cs}*{mono}" if mono != "1" else cs)
        return " + ".join(bits)

    def __repr__(self):
        return f"TPoly({self.render()})"


def binomial(n: int, k: int) -> int:
    return comb(n, k)
