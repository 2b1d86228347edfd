"""Independent verification of assembled solutions.

Each check builds an exact polynomial residual (denominators are cleared
by cross-multiplication, negative powers of the expansion points z_i by
multiplying with the slot variables zeta_i = z_i^{-1}), and passes iff the
residual vanishes identically on its trusted region.  No tolerances exist
anywhere: a coefficient either is exactly zero or the check fails.

Trusted region: the inputs are graded-truncated at a weight cap W, so a
residual monomial is fully determined exactly when its t-weight plus total
z-degree stays within W adjusted by the operations used (each t_1
derivative costs one unit, each explicit zeta prefactor adds one).  The
checks restrict themselves to that provably exact region.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .hscalar import scalar_is_zero
from .linalg import det, minor
from .hcalc import miwa_shift
from .rational import Rational
from .tpoly import TPoly, weight_of
from .xseries import XSeries


@dataclass(frozen=True)
class Residual:
    """Outcome of one identity check: binary pass, no tolerances."""

    identity: str
    caps: dict
    passed: bool
    worst: str | None
    poly: object | None = None

    def __bool__(self):
        return self.passed


def _coeff_nonzero(c) -> bool:
    if isinstance(c, XSeries):
        return not c.is_zero()
    return not scalar_is_zero(c)


def _render_coeff(c) -> str:
    from .hscalar import render_scalar

    if isinstance(c, XSeries):
        return "[" + ", ".join(render_scalar(v) for v in c.coeffs) + "]"
    return render_scalar(c)


def _poly_residual(identity: str, poly: TPoly, trust: int) -> Residual:
    worst = None
    for key in sorted(poly.terms):
        texp, zexp = key
        if weight_of(texp) + sum(zexp) > trust:
            continue
        c = poly.terms[key]
        if _coeff_nonzero(c):
            worst = (f"t-exps {texp}, zeta-exps {zexp}: "
                     f"coefficient {_render_coeff(c)}")
            break
    caps = {
        "weight": poly.weight_cap,
        "z": poly.z_cap,
        "slots": poly.nslots,
        "trust": trust,
    }
    return Residual(identity, caps, worst is None, worst, poly)


def _check_unit_constant(tau: TPoly):
    c = tau.constant_coeff()
    if isinstance(c, XSeries):
        if scalar_is_zero(c.constant_term()):
            raise ValueError("tau is not invertible: zero constant coefficient")
    elif scalar_is_zero(c):
        raise ValueError("tau is not invertible: zero constant coefficient")


def _zeta(ctx, W, Z, m, slot, power=1) -> TPoly:
    return TPoly.var_zeta(ctx, W, slot, Z, m, power)


def check_fay(tau: TPoly, z_cap: int = 4) -> Residual:
    """Differential Fay identity, cross-multiplied to polynomial form:

    hbar zeta1 zeta2 [ (d_1 tau^{[z1]}) tau^{[z2]} - (d_1 tau^{[z2]}) tau^{[z1]} ]
      = (zeta1 - zeta2) ( tau^{[z1,z2]} tau - tau^{[z1]} tau^{[z2]} ).
    """
    _check_unit_constant(tau)
    ctx = tau.ctx
    W = tau.weight_cap
    T = tau.with_slots(2, z_cap)
    t1 = miwa_shift(T, 0)
    t2 = miwa_shift(T, 1)
    t12 = miwa_shift(t1, 1)
    z1 = _zeta(ctx, W, z_cap, 2, 0)
    z2 = _zeta(ctx, W, z_cap, 2, 1)
    left = (t1.diff_t(1) * t2 - t2.diff_t(1) * t1).scale(ctx.hbar_pow(1)) * (z1 * z2)
    right = (z1 - z2) * (t12 * T - t1 * t2)
    return _poly_residual("differential-fay", left - right, W + 1)


def check_hirota3(tau: TPoly, z_cap: int = 4) -> Residual:
    """Three-term bilinear functional relation, cleared of negative powers:

    sum over cyclic (a,b,c) of (zeta_b - zeta_a) zeta_c tau^{[za,zb]} tau^{[zc]} = 0.
    """
    ctx = tau.ctx
    W = tau.weight_cap
    T = tau.with_slots(3, z_cap)
    sh = [miwa_shift(T, s) for s in range(3)]
    sh_pair = {
        (0, 1): miwa_shift(sh[0], 1),
        (1, 2): miwa_shift(sh[1], 2),
        (2, 0): miwa_shift(sh[2], 0),
    }
    zs = [_zeta(ctx, W, z_cap, 3, s) for s in range(3)]
    total = None
    for (a, b), c in (((0, 1), 2), ((1, 2), 0), ((2, 0), 1)):
        term = (zs[b] - zs[a]) * zs[c] * (sh_pair[(a, b)] * sh[c])
        total = term if total is None else total + term
    return _poly_residual("hirota-3-term", total, W + 2)


def check_det_m(tau: TPoly, m: int, z_cap: int = 4) -> Residual:
    """m-point determinant identity, rows cleared by zeta_j^{m-1}:

    prod_{i<j} (zeta_i - zeta_j) tau^{[z1..zm]} tau^{m-1}
      = det_{jk}[ zeta_j^{m-k} (1 - hbar zeta_j d_1)^{k-1} tau^{[zj]} ].
    """
    if m < 2:
        raise ValueError("needs at least two points")
    ctx = tau.ctx
    W = tau.weight_cap
    T = tau.with_slots(m, z_cap)
    sh = [miwa_shift(T, s) for s in range(m)]
    all_shift = T
    for s in range(m):
        all_shift = miwa_shift(all_shift, s)
    zs = [_zeta(ctx, W, z_cap, m, s) for s in range(m)]

    left = all_shift
    for _ in range(m - 1):
        left = left * T
    for i in range(m):
        for j in range(i + 1, m):
            left = left * (zs[i] - zs[j])

    rows = []
    for j in range(m):
        row = []
        d_pows = [sh[j]]
        for _ in range(m - 1):
            d_pows.append(d_pows[-1].diff_t(1))
        for k in range(1, m + 1):
            entry = None
            for i in range(k):
                term = d_pows[i].scale(
                    Rational((-1) ** i * comb(k - 1, i)) * ctx.hbar_pow(i)
                )
                term = term * zs[j].pow_int(m - k + i)
                entry = term if entry is None else entry + term
            row.append(entry)
        rows.append(row)
    right = det(rows)
    trust = W + m * (m - 1) // 2
    return _poly_residual(f"determinant-{m}-point", left - right, trust)


def _shift_f(F: TPoly, slots) -> TPoly:
    out = F
    for s in slots:
        out = miwa_shift(out, s)
    return out


def check_kp2(F: TPoly, z_cap: int = 4, x_form: bool = False) -> Residual:
    """Fay identity in F-form, cross-multiplied:

    (zeta2 - zeta1)(e^{Delta(z1)Delta(z2) F} - 1)
      + zeta1 zeta2 [ (d F)^{[z1]} - (d F)^{[z2]} ] / hbar = 0,

    where Delta(z) = (shift - 1)/hbar, so Delta(z1)Delta(z2)F =
    (F^{[z1,z2]} - F^{[z1]} - F^{[z2]} + F)/hbar^2.

    With ``x_form`` false, d is the t_1-derivative; with it true, d is the
    x-derivative of the coefficient functions (the variant adapted to
    solutions whose t_1-flow is an x-shift; assembled series satisfy both,
    and the x-form reacts to low-weight corruption at lower expansion
    order).
    """
    ctx = F.ctx
    W = F.weight_cap
    G2 = F.with_slots(2, z_cap)
    f1 = _shift_f(G2, (0,))
    f2 = _shift_f(G2, (1,))
    f12 = _shift_f(G2, (0, 1))
    big_g = (f12 - f1 - f2 + G2).scale(ctx.hbar_pow(-2))
    z1 = _zeta(ctx, W, z_cap, 2, 0)
    z2 = _zeta(ctx, W, z_cap, 2, 1)
    if x_form:
        d_f = G2.map_coeffs(lambda s: s.diff())
        tag = "fay-F-form-x"
    else:
        d_f = G2.diff_t(1)
        tag = "fay-F-form"
    jump = (_shift_f(d_f, (0,)) - _shift_f(d_f, (1,))).scale(ctx.hbar_pow(-1))
    resid = (z2 - z1) * (big_g.exp() - 1) + (z1 * z2) * jump
    return _poly_residual(tag, resid, W + 1)


def jacobi_minor_identity(rows) -> Residual:
    """Minor identity for a square matrix N (size >= 3):

    det N * det N[rows 1,2; cols m-1,m]
      = det N[2, m] det N[1, m-1] - det N[2, m-1] det N[1, m].
    """
    m = len(rows)
    if m < 3:
        raise ValueError("needs size >= 3")
    lhs = det(rows) * det(minor(rows, (0, 1), (m - 2, m - 1)))
    rhs = det(minor(rows, (1,), (m - 1,))) * det(minor(rows, (0,), (m - 2,))) \
        - det(minor(rows, (1,), (m - 2,))) * det(minor(rows, (0,), (m - 1,)))
    resid = lhs - rhs
    return _wrap_matrix_residual("jacobi-minors", resid, m)


def zdet_identity(rows, zs) -> Residual:
    """For any square matrix A and weights z_l:
    sum_l det(column l of A scaled rowwise by z_i) = (sum_l z_l) det A."""
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("matrix must be square")
    if len(zs) != m:
        raise ValueError("need one z per row/column")
    total = None
    for l in range(m):
        mod = [
            [rows[i][j] * zs[i] if j == l else rows[i][j] for j in range(m)]
            for i in range(m)
        ]
        d = det(mod)
        total = d if total is None else total + d
    zsum = zs[0]
    for z in zs[1:]:
        zsum = zsum + z
    resid = total - zsum * det(rows)
    return _wrap_matrix_residual("z-weighted-determinant", resid, m)


def _wrap_matrix_residual(identity: str, resid, size: int) -> Residual:
    if isinstance(resid, TPoly):
        passed = resid.is_zero()
        worst = None if passed else resid.render()
    else:
        passed = scalar_is_zero(resid)
        worst = None if passed else str(resid)
    return Residual(identity, {"size": size}, passed, worst, resid)
