"""Wave-harmonic polynomial spaces H_p and their invariant form.

``build_Hp`` constructs the space of homogeneous degree-``p`` solutions
of the wave equation on R^{n,1} as an exact kernel; the Euclidean-style
division recursion ``harmonic_decompose`` provides an independent route
to the same decomposition and the two are cross-checked in the tests.

The invariant quadratic form makes distinct monomials orthogonal with

    q(X^alpha) = (-1)^{alpha_0} * alpha! / |alpha|!

the weighting that extends the Minkowski form of degree one to symmetric
powers (so that the form is exactly infinitesimally invariant).  Its
signature on H_p is computed by exact congruence diagonalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .linalg import Row, nullspace, signature_of_form
from .poly import (
    ExactPoly,
    minkowski_norm_poly,
    monomial_index,
    monomials_of_degree,
    wave_operator,
)

F = Fraction


def dim_Hp(n: int, p: int) -> int:
    """binom(p+n-2, p) (2p+n-1) / (n-1)."""
    return math.comb(p + n - 2, p) * (2 * p + n - 1) // (n - 1)


def poly_to_row(p: ExactPoly, index: Dict[tuple, int]) -> Row:
    return {index[e]: c for e, c in p.terms.items()}


def row_to_poly(row: Row, rev: Dict[int, tuple], nvars: int) -> ExactPoly:
    out = ExactPoly(nvars)
    for i, c in row.items():
        out = out + ExactPoly.monomial(nvars, rev[i], c)
    return out


@dataclass
class HarmonicSpace:
    n: int
    p: int
    basis: List[ExactPoly]

    @property
    def dim(self) -> int:
        return len(self.basis)


def build_Hp(n: int, p: int) -> HarmonicSpace:
    """Exact basis of wave-harmonic homogeneous polynomials of degree p."""
    if n < 3 or p < 0:
        raise ValueError("need n >= 3 and p >= 0")
    nv = n + 1
    monos = monomials_of_degree(nv, p)
    index = {e: i for i, e in enumerate(monos)}
    if p < 2:
        basis = [ExactPoly.monomial(nv, e) for e in monos]
    else:
        target = monomial_index(nv, p - 2)
        rows: List[Row] = [dict() for _ in range(len(target))]
        for j, e in enumerate(monos):
            img = wave_operator(ExactPoly.monomial(nv, e))
            for e2, c in img.terms.items():
                rows[target[e2]][j] = c
        kernel = nullspace(rows, len(monos))
        rev = {i: e for e, i in index.items()}
        basis = [row_to_poly(v, rev, nv) for v in kernel]
    space = HarmonicSpace(n, p, basis)
    if space.dim != dim_Hp(n, p):
        raise AssertionError(f"dim H_{p} mismatch for n={n}")
    return space


# ---------------------------------------------------------------------------
# harmonic decomposition (division by the Minkowski quadric)
# ---------------------------------------------------------------------------


def _expansion(p: ExactPoly, d: int, norm: ExactPoly) -> List[ExactPoly]:
    """Components h_k with P = sum_k (X.X)^k h_k, each h_k wave-harmonic.

    Downward-degree recursion: the wave operator sends (X.X)^k h to
    2k(n-1+2m+2k) (X.X)^{k-1} h for harmonic h of degree m, so the
    expansion of box(P) determines all h_k with k >= 1.
    """
    if p.is_zero():
        return []
    if d <= 1:
        return [p]
    n_plus_1 = p.nvars
    r = wave_operator(p)
    parts = _expansion(r, d - 2, norm)
    higher: List[ExactPoly] = []
    for k_minus_1, comp in enumerate(parts):
        k = k_minus_1 + 1
        m = d - 2 * k
        c = F(2 * k * (n_plus_1 - 2 + 2 * m + 2 * k))
        higher.append(comp / c)
    h0 = p
    acc = ExactPoly.constant(p.nvars, 1)
    for h in higher:
        acc = acc * norm
        h0 = h0 - acc * h
    return [h0] + higher


def harmonic_decompose(p: ExactPoly) -> Tuple[ExactPoly, ExactPoly]:
    """Split P = H + (X.X) Q with H wave-harmonic, exactly."""
    if not p.is_homogeneous():
        raise ValueError("input must be homogeneous")
    if p.is_zero():
        return p, p
    d = p.degree()
    norm = minkowski_norm_poly(p.nvars)
    parts = _expansion(p, d, norm)
    h = parts[0]
    q = ExactPoly.zero(p.nvars)
    acc = ExactPoly.constant(p.nvars, 1)
    for k, comp in enumerate(parts[1:]):
        q = q + acc * comp
        acc = acc * norm
    return h, q


# ---------------------------------------------------------------------------
# invariant quadratic form
# ---------------------------------------------------------------------------


def invariant_form_q(p1: ExactPoly, p2: ExactPoly):
    """Bilinear invariant pairing of two homogeneous polynomials.

    Only same-degree pairs are meaningful; distinct monomials are
    orthogonal and q(X^alpha) = (-1)^{alpha_0} alpha!/|alpha|!.
    """
    if not (p1.is_homogeneous() and p2.is_homogeneous()):
        raise ValueError("inputs must be homogeneous")
    if p1.is_zero() or p2.is_zero():
        return F(0)
    if p1.degree() != p2.degree() or p1.nvars != p2.nvars:
        raise ValueError("inputs not in the same homogeneous space")
    d = p1.degree()
    total = F(0)
    fact_d = math.factorial(d)
    for e, c1 in p1.terms.items():
        c2 = p2.terms.get(e)
        if not c2:
            continue
        w = F(math.prod(math.factorial(k) for k in e), fact_d)
        sign = -w if e[0] % 2 else w
        total = total + c1 * c2 * sign
    return total


def gram_matrix(basis: List[ExactPoly]) -> List[List[Fraction]]:
    d = len(basis)
    g = [[F(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            v = invariant_form_q(basis[i], basis[j])
            g[i][j] = v
            g[j][i] = v
    return g


def signature_Hp(n: int, p: int) -> Tuple[int, int]:
    """Exact signature of q on H_p; must be nondegenerate."""
    space = build_Hp(n, p)
    plus, minus, zero = signature_of_form(gram_matrix(space.basis))
    if zero:
        raise AssertionError("invariant form degenerate on H_p")
    return plus, minus


def signature_Hp_expected(n: int, p: int) -> Tuple[int, int]:
    return math.comb(p + n - 1, n - 1), math.comb(p + n - 2, n - 1)


def metric_multiplication_scaling(q_poly: ExactPoly, k: int) -> Fraction:
    """Scaling constant lam with q((X.X)^k P) = lam q(P) on the space of P.

    For a q-null input the constant is recovered by polarization against
    a q-nondegenerate element of the same harmonic space; positivity is
    asserted either way.
    """
    if not q_poly.is_homogeneous() or q_poly.is_zero():
        raise ValueError("need a nonzero homogeneous wave-harmonic input")
    if not wave_operator(q_poly).is_zero():
        raise ValueError("input is not wave-harmonic")
    if k == 0:
        return F(1)
    n = q_poly.nvars - 1
    r = q_poly.degree()
    norm = minkowski_norm_poly(q_poly.nvars)
    mk = norm**k * q_poly
    qq = invariant_form_q(q_poly, q_poly)
    if qq != 0:
        lam = invariant_form_q(mk, mk) / qq
    else:
        # polarize against a basis element that pairs nontrivially with q_poly
        space = build_Hp(n, r)
        probe = None
        for b in space.basis:
            if invariant_form_q(q_poly, b) != 0:
                probe = b
                break
        if probe is None:
            raise AssertionError("invariant form degenerate on H_r")
        lam = invariant_form_q(mk, norm**k * probe) / invariant_form_q(q_poly, probe)
    if lam <= 0:
        raise AssertionError("multiplication scaling must be positive")
    return lam


# ---------------------------------------------------------------------------
# numeric eigenfunction check on the ball model
# ---------------------------------------------------------------------------


def check_restriction_eigenfunction(p_poly: ExactPoly, points=None, h: float = 1e-3) -> float:
    """Max residual of Delta_b u = p(p+n-1) u at interior sample points.

    u is the restriction of the polynomial to the ball model; the
    hyperbolic Laplacian is evaluated through the conformal formula
    Delta_b u = rho^2 Delta u + (n-2) rho x . grad u with 4th-order
    central differences.
    """
    import numpy as np

    if not p_poly.is_homogeneous():
        raise ValueError("input must be homogeneous")
    n = p_poly.nvars - 1
    deg = max(p_poly.degree(), 0)
    lam = deg * (deg + n - 1)

    if points is None:
        rng = np.random.default_rng(20240901)
        points = []
        while len(points) < 20:
            x = rng.uniform(-0.75, 0.75, size=n)
            if np.linalg.norm(x) <= 0.75:
                points.append(x)
    for x in points:
        if float(np.linalg.norm(x)) > 0.9:
            raise ValueError("sample point too close to the boundary")

    def u(x):
        norm2 = float(np.dot(x, x))
        d = 1.0 - norm2
        y = [(1.0 + norm2) / d] + [2.0 * v / d for v in x]
        return float(p_poly.evaluate_float(y))

    # 4th-order central stencils
    c1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
    c2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)
        lap = 0.0
        grad = np.zeros(n)
        for i in range(n):
            vals = []
            for step in (-2, -1, 0, 1, 2):
                xi = x.copy()
                xi[i] += step * h
                vals.append(u(xi))
            vals = np.array(vals)
            grad[i] = float(np.dot(c1, vals)) / h
            lap += float(np.dot(c2, vals)) / (h * h)
        rho = (1.0 - float(np.dot(x, x))) / 2.0
        delta_b = rho * rho * lap + (n - 2) * rho * float(np.dot(x, grad))
        worst = max(worst, abs(delta_b - lam * u(x)))
    return worst
