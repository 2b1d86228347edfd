"""hbar-deformed derivative calculus on time polynomials.

The deformed derivative of order k is (k/hbar) h_k(hbar dtilde) where
dtilde = {d_1, d_2/2, d_3/3, ...}; it reduces to d_k at hbar = 0 and obeys
a generalized Leibniz rule.  The Miwa shift t -> t +/- hbar [z^{-1}]
substitutes t_k -> t_k +/- (hbar/k) zeta^k into one z-slot and equals the
action of exp(+/- hbar D(z)) with D(z) = sum_k zeta^k d_k / k.
"""

from __future__ import annotations

from functools import cache
from math import comb, factorial

from .hscalar import HContext
from .linalg import det
from .rational import Rational
from .tpoly import TPoly

_SCALARS_OK = (int,)


class DiffOperator:
    """Finite sum of scalar multiples of products of time derivatives.

    Terms are stored canonically: a sorted tuple of derivative indices
    (k_1 <= k_2 <= ...) mapping to its scalar coefficient.  Composition is
    commutative (constant-coefficient operators), so this is just a
    polynomial ring in the symbols d_1, d_2, ...
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: HContext, terms: dict, _clean=False):
        from .hscalar import scalar_is_zero

        self.ctx = ctx
        if _clean:
            self.terms = terms
        else:
            self.terms = {
                tuple(sorted(ks)): c for ks, c in terms.items()
                if not scalar_is_zero(c)
            }

    @staticmethod
    def identity(ctx: HContext) -> "DiffOperator":
        return DiffOperator(ctx, {(): Rational(1)})

    @staticmethod
    def single(ctx: HContext, k: int) -> "DiffOperator":
        return DiffOperator(ctx, {(k,): Rational(1)})

    @staticmethod
    def constant(ctx: HContext, c) -> "DiffOperator":
        return DiffOperator(ctx, {(): c})

    @staticmethod
    def zero(ctx: HContext) -> "DiffOperator":
        return DiffOperator(ctx, {}, _clean=True)

    def __add__(self, other):
        if isinstance(other, _SCALARS_OK) and other == 0:
            return self
        if not isinstance(other, DiffOperator):
            return NotImplemented
        terms = dict(self.terms)
        for ks, c in other.terms.items():
            s = terms.get(ks, 0) + c
            from .hscalar import scalar_is_zero

            if scalar_is_zero(s):
                terms.pop(ks, None)
            else:
                terms[ks] = s
        return DiffOperator(self.ctx, terms, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(self.ctx, {k: -c for k, c in self.terms.items()},
                            _clean=True)

    def __sub__(self, other):
        return self.__add__(-other)

    def __mul__(self, other):
        """Composition (= commutative product of derivative monomials)."""
        if not isinstance(other, DiffOperator):
            return self.scale(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                p = c1 * c2
                out[key] = out[key] + p if key in out else p
        return DiffOperator(self.ctx, out)

    __rmul__ = __mul__

    def scale(self, s) -> "DiffOperator":
        return DiffOperator(self.ctx, {k: c * s for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return (self - other).terms == {}

    __hash__ = None

    def apply(self, poly: TPoly) -> TPoly:
        """Linear, exact application; each d_k lowers weight by k."""
        acc = TPoly.zero(poly.ctx, poly.weight_cap, poly.z_cap, poly.nslots)
        for ks, c in self.terms.items():
            q = poly
            for k in ks:
                q = q.diff_t(k)
                if not q.terms:
                    break
            else:
                acc = acc + q.scale(c)
        return acc

    def render(self) -> str:
        from .hscalar import render_scalar

        if not self.terms:
            return "0"
        bits = []
        for ks in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[ks]
            mono = "*".join(
                f"d{k}" if ks.count(k) == 1 else f"d{k}^{ks.count(k)}"
                for k in sorted(set(ks))
            ) or "1"
            cs = render_scalar(c)
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            bits.append(cs if mono == "1" else f"{cs}*{mono}")
        return " + ".join(bits)

    def __repr__(self):
        return f"DiffOperator({self.render()})"


def _compositions(total: int, parts: int):
    """Ordered tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@cache
def dh_operator(k: int, ctx: HContext) -> DiffOperator:
    """The deformed derivative of order k as an explicit operator.

    Order 0 is the identity.  For k >= 1,
      sum_{l=1..k} (hbar^{l-1} k / l!) sum_{compositions k_1+..+k_l = k}
          d_{k_1} ... d_{k_l} / (k_1 ... k_l),
    e.g. order 2 gives d_2 + hbar d_1^2.
    """
    if k < 0:
        raise ValueError("order must be nonnegative")
    if k == 0:
        return DiffOperator.identity(ctx)
    terms: dict = {}
    for l in range(1, k + 1):
        pref = ctx.hbar_pow(l - 1) * Rational(k, factorial(l))
        for ks in _compositions(k, l):
            denom = 1
            for a in ks:
                denom *= a
            key = tuple(sorted(ks))
            c = pref * Rational(1, denom)
            terms[key] = terms[key] + c if key in terms else c
    return DiffOperator(ctx, terms)


def dh_determinant(n: int, ctx: HContext) -> DiffOperator:
    """Same operator extracted from the almost-triangular n x n determinant

        | d_1   -1    0   ...            |
        | d_2  h d_1  -2   ...           |  / (n-1)!
        | ...                            |
        | d_n  h d_{n-1} ... h d_1       |

    (h = hbar); agrees with ``dh_operator`` term by term.
    """
    if n < 1:
        raise ValueError("order must be positive")
    hbar = ctx.hbar_pow(1)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j == 1:
                row.append(DiffOperator.single(ctx, i))
            elif j == i + 1:
                row.append(DiffOperator.constant(ctx, Rational(-i)))
            elif j <= i:
                row.append(DiffOperator.single(ctx, i - j + 1).scale(hbar))
            else:
                row.append(0)
        rows.append(row)
    d = det(rows)
    return d.scale(Rational(1, factorial(n - 1)))


def dh_apply(k: int, poly: TPoly) -> TPoly:
    return dh_operator(k, poly.ctx).apply(poly)


def miwa_shift(poly: TPoly, slot: int, sign: int = 1) -> TPoly:
    """Substitute t_k -> t_k + sign * (hbar/k) zeta_slot^k, truncated at the
    slot's z-degree cap.  Composing shifts in different slots commutes."""
    if not (0 <= slot < poly.nslots):
        raise ValueError("slot out of range")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ctx = poly.ctx
    Z = poly.z_cap
    out: dict = {}
    for (texp, zexp), coeff in poly.terms.items():
        base_z = zexp[slot] if slot < len(zexp) else 0
        # expansion state: (remaining exponents as list, z-degree added, factor)
        states = [(list(texp), 0, None)]  # factor None means 1
        for pos, a in enumerate(texp):
            if a == 0:
                continue
            k = pos + 1
            new_states = []
            for exps, zd, fac in states:
                for j in range(0, a + 1):
                    zd2 = zd + k * j
                    if base_z + zd2 > Z:
                        break
                    if j == 0:
                        new_states.append((exps, zd, fac))
                        continue
                    f = Rational(comb(a, j) * sign ** j, k ** j) * ctx.hbar_pow(j)
                    e2 = list(exps)
                    e2[pos] = a - j
                    new_states.append((e2, zd2, f if fac is None else fac * f))
            states = new_states
        for exps, zd, fac in states:
            nz = list(zexp) + [0] * (poly.nslots - len(zexp))
            nz[slot] += zd
            key = (
                tuple(exps[: _last_nonzero(exps)]),
                tuple(nz[: _last_nonzero(nz)]),
            )
            c = coeff if fac is None else coeff * fac
            out[key] = out[key] + c if key in out else c
    return TPoly(ctx, poly.weight_cap, poly.z_cap, poly.nslots, out)


def _last_nonzero(xs) -> int:
    n = len(xs)
    while n and xs[n - 1] == 0:
        n -= 1
    return n


def delta_apply(poly: TPoly, slot: int) -> TPoly:
    """The difference operator (exp(hbar D(z)) - 1)/hbar in one slot.

    Expanding in the slot variable it is sum_k zeta^k (deformed d_k)/k.
    """
    shifted = miwa_shift(poly, slot, 1)
    return (shifted - poly).scale(poly.ctx.hbar_pow(-1))
