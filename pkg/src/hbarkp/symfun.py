"""Polynomial bases labelled by partitions: complete homogeneous h_k,
Schur, monomial, power sums, plain time monomials and their hbar
deformation, plus the scalar product that makes Schur functions
orthonormal.

Everything is expressed in the times t_1, t_2, ... (so "symmetric
function" means an element of Q[t_1, t_2, ...] graded by weight); the
x-variable picture only appears in tests as a cross-check.
"""

from __future__ import annotations

from functools import cache
from math import factorial

from .hscalar import HContext
from .linalg import det, invert_rational_matrix
from .partitions import Partition, partitions_of
from .rational import Rational
from .tpoly import CapError, TPoly


def _shape(ctx, weight_cap, z_cap, nslots):
    return TPoly.zero(ctx, weight_cap, z_cap, nslots)


@cache
def elementary_h(k: int, ctx: HContext, weight_cap: int,
                 z_cap: int = 0, nslots: int = 0) -> TPoly:
    """Complete homogeneous polynomial h_k; h_0 = 1 and h_k = 0 for k < 0.

    h_k = sum over partitions lambda of k of t_lambda / sigma(lambda),
    which matches the generating series exp(sum t_j z^j) = sum h_k z^k.
    """
    base = _shape(ctx, weight_cap, z_cap, nslots)
    if k < 0:
        return base
    if k > weight_cap:
        raise CapError(f"h_{k} exceeds weight cap {weight_cap}")
    out = base
    for lam in partitions_of(k):
        out = out + base.monomial_times(lam).scale(Rational(1, lam.sigma))
    return out


@cache
def schur(lam: Partition, ctx: HContext, weight_cap: int,
          z_cap: int = 0, nslots: int = 0) -> TPoly:
    """Schur polynomial via the Jacobi-Trudi determinant of h's."""
    lam = Partition(lam)
    if lam.weight > weight_cap:
        raise CapError(f"s_{lam} exceeds weight cap {weight_cap}")
    n = lam.ell
    if n == 0:
        return TPoly.one(ctx, weight_cap, z_cap, nslots)
    rows = [
        [elementary_h(lam[i] - i + j, ctx, weight_cap, z_cap, nslots)
         for j in range(n)]
        for i in range(n)
    ]
    return det(rows)


def t_monomial(lam: Partition, ctx: HContext, weight_cap: int,
               z_cap: int = 0, nslots: int = 0) -> TPoly:
    """The plain monomial t_lambda = t_{lam_1} t_{lam_2} ..."""
    return _shape(ctx, weight_cap, z_cap, nslots).monomial_times(lam)


def h_product(lam: Partition, ctx: HContext, weight_cap: int,
              z_cap: int = 0, nslots: int = 0) -> TPoly:
    """Product basis h_lambda = h_{lam_1} h_{lam_2} ..."""
    out = TPoly.one(ctx, weight_cap, z_cap, nslots)
    for p in lam:
        out = out * elementary_h(p, ctx, weight_cap, z_cap, nslots)
    return out


def power_sum(lam: Partition, ctx: HContext, weight_cap: int,
              z_cap: int = 0, nslots: int = 0) -> TPoly:
    """Power sum basis p_lambda = rho(lambda) t_lambda."""
    lam = Partition(lam)
    return t_monomial(lam, ctx, weight_cap, z_cap, nslots).scale(Rational(lam.rho))


class TransitionMatrix:
    """Square rational matrix indexed by the partitions of one weight.

    Rows/columns follow the reverse lexicographic enumeration.  Direction
    "L" expands power sums over monomial symmetric functions; "L-inverse"
    is its exact inverse.
    """

    def __init__(self, weight: int, labels, entries, direction: str):
        self.weight = weight
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.entries = tuple(tuple(row) for row in entries)
        self.direction = direction

    def entry(self, lam, mu):
        return self.entries[self.index[Partition(lam)]][self.index[Partition(mu)]]


def _mapping_count(lam: Partition, mu: Partition) -> int:
    """Number of maps f from rows of lam onto positions of mu with
    row sums matching mu (the image is forced into the first ell(mu)
    positions: any mass landing outside would violate mu_i = 0)."""
    lm, lmu = lam.ell, mu.ell
    if lm == 0:
        return 1 if lmu == 0 else 0
    if lmu == 0:
        return 0
    count = 0
    sums = [0] * lmu

    def rec(j: int):
        nonlocal count
        if j == lm:
            count += sums == list(mu)
            return
        for i in range(lmu):
            s = sums[i] + lam[j]
            if s > mu[i]:
                continue
            sums[i] = s
            rec(j + 1)
            sums[i] -= lam[j]

    rec(0)
    return count


@cache
def transition_L(n: int) -> tuple[TransitionMatrix, TransitionMatrix]:
    """The (L, L^{-1}) pair at weight n.

    L is strictly lower triangular with respect to dominance: the (lam, mu)
    entry vanishes unless mu dominates lam, and the diagonal entry is
    sigma(lam) > 0, so the inverse is exact over Q.
    """
    if n < 1:
        raise ValueError("transition matrices start at weight 1")
    labels = partitions_of(n)
    entries = [
        [Rational(_mapping_count(lam, mu)) for mu in labels] for lam in labels
    ]
    inv = invert_rational_matrix(entries)
    return (
        TransitionMatrix(n, labels, entries, "L"),
        TransitionMatrix(n, labels, inv, "L-inverse"),
    )


@cache
def monomial_m(lam: Partition, ctx: HContext, weight_cap: int,
               z_cap: int = 0, nslots: int = 0) -> TPoly:
    """Monomial symmetric function m_lambda expressed in the times.

    Expanded over power sums through the inverse transition matrix:
    m_lam = sum_{mu >= lam} (L^{-1})_{lam mu} p_mu.
    """
    lam = Partition(lam)
    if lam.weight > weight_cap:
        raise CapError(f"m_{lam} exceeds weight cap {weight_cap}")
    if lam.ell == 0:
        return TPoly.one(ctx, weight_cap, z_cap, nslots)
    _, linv = transition_L(lam.weight)
    out = _shape(ctx, weight_cap, z_cap, nslots)
    for mu in partitions_of(lam.weight):
        c = linv.entry(lam, mu)
        if c == 0:
            continue
        out = out + power_sum(mu, ctx, weight_cap, z_cap, nslots).scale(c)
    return out


@cache
def t_hbar(lam: Partition, ctx: HContext, weight_cap: int,
           z_cap: int = 0, nslots: int = 0) -> TPoly:
    """hbar-deformed monomial basis element.

    t^hbar_lam = (sigma/rho) * hbar^{ell(lam)} * m_lam(t/hbar), expanded in
    closed form as sum_{mu >= lam} (sigma(lam)/rho(lam)) (L^{-1})_{lam mu}
    rho(mu) hbar^{ell(lam)-ell(mu)} t_mu.  All hbar exponents are >= 0, so
    the hbar -> 0 limit is the plain monomial t_lam.
    """
    lam = Partition(lam)
    if lam.weight > weight_cap:
        raise CapError(f"t^h_{lam} exceeds weight cap {weight_cap}")
    if lam.ell == 0:
        return TPoly.one(ctx, weight_cap, z_cap, nslots)
    _, linv = transition_L(lam.weight)
    pref = Rational(lam.sigma, lam.rho)
    out = _shape(ctx, weight_cap, z_cap, nslots)
    for mu in partitions_of(lam.weight):
        c = linv.entry(lam, mu)
        if c == 0:
            continue
        s = (pref * c * Rational(mu.rho)) * ctx.hbar_pow(lam.ell - mu.ell)
        out = out + t_monomial(mu, ctx, weight_cap, z_cap, nslots).scale(s)
    return out


def scalar_product(u: TPoly, v: TPoly):
    """<u, v> = u(d/dt_1, (1/2) d/dt_2, ...) v at t = 0.

    Symmetric; Schur functions are orthonormal, <p_lam, p_mu> =
    z_lam delta, <h_lam, m_mu> = delta.
    """
    total = u.ctx.zero()
    for (texp, zexp), cu in u.terms.items():
        if zexp != ():
            raise ValueError("scalar product is defined on time polynomials")
        cv = v.terms.get((texp, ()))
        if cv is None:
            continue
        f = Rational(1)
        for i, a in enumerate(texp):
            f *= Rational(factorial(a), (i + 1) ** a)
        total = total + (cu * cv) * f
    return total


def h_apply(k: int, fetch):
    """h_k evaluated on a sequence: sum over |lam| = k of
    prod fetch(lam_i) / sigma(lam).  ``fetch(i)`` supplies the i-th value
    (any ring element); k = 0 is the empty product 1."""
    if k == 0:
        return Rational(1)
    total = None
    for lam in partitions_of(k):
        prod = fetch(lam[0])
        for p in lam[1:]:
            prod = prod * fetch(p)
        term = prod * Rational(1, lam.sigma)
        total = term if total is None else total + term
    return total
