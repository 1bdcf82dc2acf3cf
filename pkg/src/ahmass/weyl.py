"""Linearized gravity on Minkowski space and polynomial Weyl tensors.

The chain implemented here:

* ``linearized_einstein`` / ``linearized_riemann`` -- the standard
  second-order operators on symmetric 2-tensors ``h`` with polynomial
  components;
* ``de_donder_fix`` -- gauge transformation to the trace-free,
  divergence-free (hence wave) gauge by two exact linear solves;
* ``build_Wp`` -- the space W_p of degree-p polynomial-coefficient
  4-tensors with Weyl symmetries, eta-trace-free and satisfying both
  Bianchi identities, as an exact constraint kernel;
* ``poincare_homotopy`` and ``weyl_to_potential`` -- exact integration
  of a Weyl tensor back to a potential with R(h) = -W/2;
* the invariant quadratic form on W_p and its signature;
* algebraic construction of highest-weight vectors in the relevant
  tensor spaces, with comparison reports against cataloged closed forms.

All tensors are stored over the ambient Minkowski variables X^0..X^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .gaussian import GaussianRational
from .linalg import Row, SpanSolver, nullspace, signature_of_form, solve_min_support
from .lorentz import Matrix, cartan_rank
from .poly import (
    ExactPoly,
    monomial_index,
    monomials_of_degree,
    wave_operator,
)

F = Fraction


def _eta_sign(mu: int) -> int:
    return -1 if mu == 0 else 1


# ---------------------------------------------------------------------------
# symmetric 2-tensors
# ---------------------------------------------------------------------------


@dataclass
class PolySym2:
    """Symmetric 2-tensor h_{mu nu} with polynomial components."""

    nv: int  # ambient dimension n+1
    comp: Dict[Tuple[int, int], ExactPoly]

    def __post_init__(self):
        clean = {}
        for (m, n), p in self.comp.items():
            if m > n:
                m, n = n, m
            if not p.is_zero():
                prev = clean.get((m, n))
                clean[(m, n)] = p if prev is None else prev + p
        self.comp = clean

    def get(self, mu: int, nu: int) -> ExactPoly:
        if mu > nu:
            mu, nu = nu, mu
        return self.comp.get((mu, nu), ExactPoly.zero(self.nv))

    def map(self, fn) -> "PolySym2":
        return PolySym2(self.nv, {k: fn(p) for k, p in self.comp.items()})

    def __add__(self, other):
        out = dict(self.comp)
        for k, p in other.comp.items():
            out[k] = out.get(k, ExactPoly.zero(self.nv)) + p
        return PolySym2(self.nv, out)

    def __sub__(self, other):
        return self + other.scale(F(-1))

    def scale(self, c) -> "PolySym2":
        return self.map(lambda p: p * c)

    def is_zero(self) -> bool:
        return not self.comp

    def degree(self) -> int:
        return max((p.degree() for p in self.comp.values()), default=-1)

    def eta_trace(self) -> ExactPoly:
        out = ExactPoly.zero(self.nv)
        for mu in range(self.nv):
            out = out + _eta_sign(mu) * self.get(mu, mu)
        return out

    def divergence(self) -> List[ExactPoly]:
        """(div h)_nu = d^mu h_{mu nu}."""
        out = []
        for nu in range(self.nv):
            s = ExactPoly.zero(self.nv)
            for mu in range(self.nv):
                s = s + _eta_sign(mu) * self.get(mu, nu).diff(mu)
            out.append(s)
        return out

    def box(self) -> "PolySym2":
        return self.map(wave_operator)

    def radial_contraction(self) -> List[ExactPoly]:
        """(h X)_nu = h_{mu nu} X^mu."""
        out = []
        for nu in range(self.nv):
            s = ExactPoly.zero(self.nv)
            for mu in range(self.nv):
                s = s + self.get(mu, nu) * ExactPoly.variable(self.nv, mu)
            out.append(s)
        return out

    def conjugate(self) -> "PolySym2":
        return self.map(lambda p: p.conjugate())

    def __eq__(self, other):
        if not isinstance(other, PolySym2):
            return NotImplemented
        return (self - other).is_zero()


def eta_tensor(nv: int) -> PolySym2:
    return PolySym2(
        nv,
        {(mu, mu): ExactPoly.constant(nv, _eta_sign(mu)) for mu in range(nv)},
    )


def sym_gauge(xi: Sequence[ExactPoly]) -> PolySym2:
    """Pure gauge perturbation d_mu xi_nu + d_nu xi_mu (xi covariant)."""
    nv = xi[0].nvars
    comp = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            comp[(mu, nu)] = xi[nu].diff(mu) + xi[mu].diff(nu)
    return PolySym2(nv, comp)


def lie_eta(xi_vec: Sequence[ExactPoly]) -> PolySym2:
    """Lie derivative of eta along a vector field given contravariantly."""
    nv = xi_vec[0].nvars
    xi_cov = [_eta_sign(mu) * xi_vec[mu] for mu in range(nv)]
    return sym_gauge(xi_cov)


def linearized_einstein(h: PolySym2) -> PolySym2:
    """-Box h + sym d(div h) - Hess tr - eta (divdiv - Box tr)."""
    nv = h.nv
    tr = h.eta_trace()
    div = h.divergence()
    divdiv = ExactPoly.zero(nv)
    for nu in range(nv):
        divdiv = divdiv + _eta_sign(nu) * div[nu].diff(nu)
    box_tr = wave_operator(tr)
    comp = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            p = -wave_operator(h.get(mu, nu))
            p = p + div[nu].diff(mu) + div[mu].diff(nu)
            p = p - tr.diff(mu).diff(nu)
            if mu == nu:
                p = p - _eta_sign(mu) * divdiv + _eta_sign(mu) * box_tr
            comp[(mu, nu)] = p
    return PolySym2(nv, comp)


# ---------------------------------------------------------------------------
# 4-tensors with Weyl symmetries
# ---------------------------------------------------------------------------


def index_pairs(nv: int) -> List[Tuple[int, int]]:
    return [(mu, nu) for mu in range(nv) for nu in range(mu + 1, nv)]


@dataclass
class PolyTensor4:
    """Covariant 4-tensor, antisymmetric in each pair, pair-swap symmetric.

    Stored on independent coordinates: ``comp[(a, b)]`` with pair indices
    a <= b referring to ``index_pairs(nv)``.
    """

    nv: int
    comp: Dict[Tuple[int, int], ExactPoly]

    def __post_init__(self):
        self.pairs = index_pairs(self.nv)
        self.pidx = {p: i for i, p in enumerate(self.pairs)}
        clean = {}
        for (a, b), p in self.comp.items():
            if a > b:
                a, b = b, a
            if not p.is_zero():
                prev = clean.get((a, b))
                clean[(a, b)] = p if prev is None else prev + p
        self.comp = clean

    def get4(self, mu: int, nu: int, al: int, be: int) -> ExactPoly:
        if mu == nu or al == be:
            return ExactPoly.zero(self.nv)
        sign = 1
        if mu > nu:
            mu, nu, sign = nu, mu, -sign
        if al > be:
            al, be, sign = be, al, -sign
        a, b = self.pidx[(mu, nu)], self.pidx[(al, be)]
        if a > b:
            a, b = b, a
        p = self.comp.get((a, b))
        if p is None:
            return ExactPoly.zero(self.nv)
        return p if sign == 1 else -p

    def map(self, fn) -> "PolyTensor4":
        return PolyTensor4(self.nv, {k: fn(p) for k, p in self.comp.items()})

    def __add__(self, other):
        out = dict(self.comp)
        for k, p in other.comp.items():
            out[k] = out.get(k, ExactPoly.zero(self.nv)) + p
        return PolyTensor4(self.nv, out)

    def __sub__(self, other):
        return self + other.scale(F(-1))

    def scale(self, c) -> "PolyTensor4":
        return self.map(lambda p: p * c)

    def is_zero(self) -> bool:
        return not self.comp

    def conjugate(self) -> "PolyTensor4":
        return self.map(lambda p: p.conjugate())

    def degree(self) -> int:
        return max((p.degree() for p in self.comp.values()), default=-1)

    # -- constraint residuals (all must vanish identically on W_p) ------

    def eta_trace_residuals(self) -> List[ExactPoly]:
        out = []
        for nu in range(self.nv):
            for be in range(nu, self.nv):
                s = ExactPoly.zero(self.nv)
                for mu in range(self.nv):
                    s = s + _eta_sign(mu) * self.get4(mu, nu, mu, be)
                out.append(s)
        return out

    def bianchi1_residuals(self) -> List[ExactPoly]:
        out = []
        for mu in range(self.nv):
            for nu in range(mu + 1, self.nv):
                for al in range(nu + 1, self.nv):
                    for be in range(self.nv):
                        s = (
                            self.get4(mu, nu, al, be)
                            + self.get4(nu, al, mu, be)
                            + self.get4(al, mu, nu, be)
                        )
                        out.append(s)
        return out

    def bianchi2_residuals(self) -> List[ExactPoly]:
        out = []
        for si in range(self.nv):
            for mu in range(si + 1, self.nv):
                for nu in range(mu + 1, self.nv):
                    for (al, be) in index_pairs(self.nv):
                        s = (
                            self.get4(mu, nu, al, be).diff(si)
                            + self.get4(nu, si, al, be).diff(mu)
                            + self.get4(si, mu, al, be).diff(nu)
                        )
                        out.append(s)
        return out

    def satisfies_weyl_constraints(self) -> bool:
        for r in self.eta_trace_residuals():
            if not r.is_zero():
                return False
        for r in self.bianchi1_residuals():
            if not r.is_zero():
                return False
        for r in self.bianchi2_residuals():
            if not r.is_zero():
                return False
        return True


def linearized_riemann(h: PolySym2) -> PolyTensor4:
    """R(h)_{mu nu al be} = -1/2 (dd h antisymmetrized in the two pairs)."""
    nv = h.nv
    comp = {}
    pairs = index_pairs(nv)
    for a, (mu, nu) in enumerate(pairs):
        for b in range(a, len(pairs)):
            al, be = pairs[b]
            p = (
                h.get(nu, be).diff(mu).diff(al)
                + h.get(mu, al).diff(nu).diff(be)
                - h.get(nu, al).diff(mu).diff(be)
                - h.get(mu, be).diff(nu).diff(al)
            )
            if not p.is_zero():
                comp[(a, b)] = p / (-2)
    return PolyTensor4(nv, comp)


# ---------------------------------------------------------------------------
# de Donder gauge
# ---------------------------------------------------------------------------


def _solve_box(nv: int, rhs: ExactPoly, degree: int) -> ExactPoly:
    """One exact minimum-support solution of Box xi = rhs, xi of ``degree``."""
    monos = monomials_of_degree(nv, degree)
    if rhs.is_zero():
        return ExactPoly.zero(nv)
    target = monomial_index(nv, degree - 2)
    rows: List[Row] = [dict() for _ in range(len(target))]
    for j, e in enumerate(monos):
        img = wave_operator(ExactPoly.monomial(nv, e))
        for e2, c in img.terms.items():
            rows[target[e2]][j] = c
    b = [F(0)] * len(target)
    for e, c in rhs.terms.items():
        b[target[e]] = c
    sol = solve_min_support(rows, len(monos), b)
    out = ExactPoly.zero(nv)
    for j, c in sol.items():
        out = out + ExactPoly.monomial(nv, monos[j], c)
    return out


def de_donder_fix(h: PolySym2) -> Tuple[PolySym2, List[ExactPoly]]:
    """Gauge-fix a solution of the linearized Einstein equations.

    Returns (h_tilde, xi) with h_tilde = h + d xi + (d xi)^T trace free,
    divergence free and componentwise wave harmonic.  The two steps: an
    exact solve of Box xi = -div h + d(tr h)/2, then a joint harmonic
    solve removing the remaining trace.  Free variables are pinned to
    zero, so the output is deterministic and xi = 0 whenever h is
    already in the gauge.
    """
    nv = h.nv
    if not linearized_einstein(h).is_zero():
        raise ValueError("input does not solve the linearized Einstein equations")
    deg = h.degree()
    if deg < 0:
        return h, [ExactPoly.zero(nv)] * nv
    xdeg = deg + 1
    tr = h.eta_trace()
    div = h.divergence()
    xi1 = []
    for nu in range(nv):
        rhs = -div[nu] + tr.diff(nu) / 2
        xi1.append(_solve_box(nv, rhs, xdeg))
    h1 = h + sym_gauge(xi1)

    # second step: Box xi = 0 with d.xi = -tr(h1)/2, solved jointly
    tr1 = h1.eta_trace()
    monos = monomials_of_degree(nv, xdeg)
    midx = {e: i for i, e in enumerate(monos)}
    ncols = nv * len(monos)

    def col(nu, j):
        return nu * len(monos) + j

    rows: List[Row] = []
    rhs_vec: List[Fraction] = []
    lower = monomial_index(nv, xdeg - 2)
    # wave equation on every component
    for nu in range(nv):
        block: List[Row] = [dict() for _ in range(len(lower))]
        for j, e in enumerate(monos):
            img = wave_operator(ExactPoly.monomial(nv, e))
            for e2, c in img.terms.items():
                block[lower[e2]][col(nu, j)] = c
        rows.extend(block)
        rhs_vec.extend([F(0)] * len(lower))
    # divergence condition d^mu xi_mu = -tr1/2, degree xdeg-1
    dtarget = monomial_index(nv, xdeg - 1)
    dblock: List[Row] = [dict() for _ in range(len(dtarget))]
    for nu in range(nv):
        for j, e in enumerate(monos):
            img = _eta_sign(nu) * ExactPoly.monomial(nv, e).diff(nu)
            for e2, c in img.terms.items():
                dblock[dtarget[e2]][col(nu, j)] = (
                    dblock[dtarget[e2]].get(col(nu, j), F(0)) + c
                )
    drhs = [F(0)] * len(dtarget)
    half_tr = tr1 / (-2)
    for e, c in half_tr.terms.items():
        drhs[dtarget[e]] = c
    rows.extend(dblock)
    rhs_vec.extend(drhs)
    sol = solve_min_support(rows, ncols, rhs_vec)
    xi2 = []
    for nu in range(nv):
        p = ExactPoly.zero(nv)
        for j in range(len(monos)):
            c = sol.get(col(nu, j))
            if c:
                p = p + ExactPoly.monomial(nv, monos[j], c)
        xi2.append(p)
    out = h1 + sym_gauge(xi2)
    if not out.eta_trace().is_zero():
        raise AssertionError("gauge fixing failed to remove the trace")
    if any(not d.is_zero() for d in out.divergence()):
        raise AssertionError("gauge fixing failed to remove the divergence")
    if not out.box().is_zero():
        raise AssertionError("gauge-fixed tensor is not wave harmonic")
    xi_total = [a + b for a, b in zip(xi1, xi2)]
    return out, xi_total


# ---------------------------------------------------------------------------
# the spaces W_p
# ---------------------------------------------------------------------------


def dim_Wp(n: int, p: int) -> int:
    num = (n + 1) * math.comb(p + n, p + 3) * (p + 1) * (p + n + 2) * (2 * p + n + 3)
    den = 2 * (n - 1) * (p + n)
    assert num % den == 0
    return num // den


@dataclass
class WeylSpace:
    n: int
    p: int
    basis: List[PolyTensor4]
    _solver: SpanSolver | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinate_row(self, w: PolyTensor4) -> Row:
        monos = monomial_index(self.n + 1, self.p)
        npp = len(index_pairs(self.n + 1))
        out: Row = {}
        for (a, b), poly in w.comp.items():
            pp = a * npp + b  # a <= b
            for e, c in poly.terms.items():
                out[monos[e] * npp * npp + pp] = c
        return out

    def solver(self) -> SpanSolver:
        if self._solver is None:
            self._solver = SpanSolver([self.coordinate_row(w) for w in self.basis])
        return self._solver

    def coordinates(self, w: PolyTensor4) -> Row:
        return self.solver().coordinates(self.coordinate_row(w))

    def contains(self, w: PolyTensor4) -> bool:
        return self.solver().contains(self.coordinate_row(w))


def build_Wp(n: int, p: int) -> WeylSpace:
    """Exact basis of W_p from the stacked linear constraints.

    Index symmetries are enforced by the storage; the eta-trace, first
    and second (differential) Bianchi identities are stacked as a sparse
    system over the coefficient coordinates.  The system splits under
    the per-variable parity grading (every constraint is homogeneous for
    it), which keeps each elimination block small.
    """
    nv = n + 1
    pairs = index_pairs(nv)
    npairs = len(pairs)
    monos = monomials_of_degree(nv, p)
    midx = {e: i for i, e in enumerate(monos)}
    coords: List[Tuple[int, int, int]] = []  # (mono idx, a, b)
    for m in range(len(monos)):
        for a in range(npairs):
            for b in range(a, npairs):
                coords.append((m, a, b))
    cidx = {c: i for i, c in enumerate(coords)}

    pidx = {pr: i for i, pr in enumerate(pairs)}

    def coord_of_fast(m, mu, nu, al, be):
        sign = 1
        if mu > nu:
            mu, nu, sign = nu, mu, -sign
        if al > be:
            al, be, sign = be, al, -sign
        a, b = pidx[(mu, nu)], pidx[(al, be)]
        if a > b:
            a, b = b, a
        return cidx[(m, a, b)], sign

    rows: List[Row] = []
    # eta trace: W_{mu nu mu be} vanishes structurally when mu hits nu or be
    for nu in range(nv):
        for be in range(nu, nv):
            for m, e in enumerate(monos):
                r: Row = {}
                for mu in range(nv):
                    if mu == nu or mu == be:
                        continue
                    c, s = coord_of_fast(m, mu, nu, mu, be)
                    r[c] = r.get(c, F(0)) + _eta_sign(mu) * s
                r = {k: v for k, v in r.items() if v}
                if r:
                    rows.append(r)
    # first Bianchi
    for mu in range(nv):
        for nu in range(mu + 1, nv):
            for al in range(nu + 1, nv):
                for be in range(nv):
                    for m in range(len(monos)):
                        r = {}
                        for (x, y, z) in ((mu, nu, al), (nu, al, mu), (al, mu, nu)):
                            if x == y or z == be:
                                continue
                            c, s = coord_of_fast(m, x, y, z, be)
                            r[c] = r.get(c, F(0)) + s
                        r = {k: v for k, v in r.items() if v}
                        if r:
                            rows.append(r)
    # second Bianchi (rows indexed by degree p-1 monomials)
    if p >= 1:
        lower = monomials_of_degree(nv, p - 1)
        for si in range(nv):
            for mu in range(si + 1, nv):
                for nu in range(mu + 1, nv):
                    for (al, be) in pairs:
                        for e_low in lower:
                            r = {}
                            for (d, x, y) in ((si, mu, nu), (mu, nu, si), (nu, si, mu)):
                                if x == y:
                                    continue
                                e = list(e_low)
                                e[d] += 1
                                m = midx[tuple(e)]
                                c, s = coord_of_fast(m, x, y, al, be)
                                r[c] = r.get(c, F(0)) + s * (e_low[d] + 1)
                            r = {k: v for k, v in r.items() if v}
                            if r:
                                rows.append(r)

    # parity classes
    def coord_class(idx: int) -> Tuple[int, ...]:
        m, a, b = coords[idx]
        e = monos[m]
        mult = list(e)
        for t in pairs[a] + pairs[b]:
            mult[t] += 1
        return tuple(v % 2 for v in mult)

    classes: Dict[Tuple[int, ...], List[int]] = {}
    for i in range(len(coords)):
        classes.setdefault(coord_class(i), []).append(i)
    rows_by_class: Dict[Tuple[int, ...], List[Row]] = {k: [] for k in classes}
    for r in rows:
        key = coord_class(next(iter(r)))
        rows_by_class[key].append(r)

    basis: List[PolyTensor4] = []
    for key in sorted(classes):
        cols = classes[key]
        local = {g: i for i, g in enumerate(cols)}
        lrows = [
            {local[c]: v for c, v in r.items()} for r in rows_by_class[key]
        ]
        for vec in nullspace(lrows, len(cols)):
            comp: Dict[Tuple[int, int], ExactPoly] = {}
            for lc, val in vec.items():
                m, a, b = coords[cols[lc]]
                key2 = (a, b)
                term = ExactPoly.monomial(nv, monos[m], val)
                comp[key2] = comp.get(key2, ExactPoly.zero(nv)) + term
            basis.append(PolyTensor4(nv, comp))
    space = WeylSpace(n, p, basis)
    if space.dim != dim_Wp(n, p):
        raise AssertionError(f"dim W_{p} mismatch for n={n}: {space.dim}")
    return space


# ---------------------------------------------------------------------------
# exterior forms and the homotopy operator
# ---------------------------------------------------------------------------


@dataclass
class PolyForm:
    """Exterior k-form with polynomial coefficients (sorted index tuples)."""

    nv: int
    k: int
    comp: Dict[Tuple[int, ...], ExactPoly]

    def __post_init__(self):
        clean = {}
        for idx, p in self.comp.items():
            if len(idx) != self.k or list(idx) != sorted(idx) or len(set(idx)) != self.k:
                raise ValueError(f"bad index tuple {idx} for a {self.k}-form")
            if not p.is_zero():
                clean[idx] = p
        self.comp = clean

    def get(self, idx: Tuple[int, ...]) -> ExactPoly:
        return self.comp.get(idx, ExactPoly.zero(self.nv))

    def __add__(self, other):
        out = dict(self.comp)
        for k, p in other.comp.items():
            out[k] = out.get(k, ExactPoly.zero(self.nv)) + p
        return PolyForm(self.nv, self.k, out)

    def __sub__(self, other):
        return self + other.scale(F(-1))

    def scale(self, c) -> "PolyForm":
        return PolyForm(self.nv, self.k, {k: p * c for k, p in self.comp.items()})

    def is_zero(self) -> bool:
        return not self.comp


def _insert_index(idx: Tuple[int, ...], mu: int) -> Tuple[Tuple[int, ...], int] | None:
    """Sorted insertion of mu into idx with the sign of the permutation."""
    if mu in idx:
        return None
    pos = 0
    while pos < len(idx) and idx[pos] < mu:
        pos += 1
    sign = -1 if pos % 2 else 1
    return idx[:pos] + (mu,) + idx[pos:], sign


def exterior_derivative(w: PolyForm) -> PolyForm:
    out: Dict[Tuple[int, ...], ExactPoly] = {}
    for idx, p in w.comp.items():
        for mu in range(w.nv):
            d = p.diff(mu)
            if d.is_zero():
                continue
            ins = _insert_index(idx, mu)
            if ins is None:
                continue
            nidx, sign = ins
            out[nidx] = out.get(nidx, ExactPoly.zero(w.nv)) + sign * d
    return PolyForm(w.nv, w.k + 1, out)


def poincare_homotopy(w: PolyForm) -> PolyForm:
    """The cone contraction I_k with omega = d(I_k w) + I_{k+1}(dw).

    On a term with homogeneous coefficient of degree l the radial
    integral contributes the exact factor 1/(k+l).
    """
    if w.k == 0:
        raise ValueError("the homotopy is defined for k >= 1")
    out: Dict[Tuple[int, ...], ExactPoly] = {}
    for idx, p in w.comp.items():
        degs = {sum(e) for e in p.terms}
        for l in degs:
            pl = p.homogeneous_component(l)
            scale = F(1, w.k + l)
            for j, mu in enumerate(idx):
                rest = idx[:j] + idx[j + 1 :]
                sign = -1 if j % 2 else 1
                term = ExactPoly.variable(w.nv, mu) * pl * (sign * scale)
                out[rest] = out.get(rest, ExactPoly.zero(w.nv)) + term
    return PolyForm(w.nv, w.k - 1, out)


# ---------------------------------------------------------------------------
# Weyl tensor -> potential
# ---------------------------------------------------------------------------


def weyl_to_potential(w: PolyTensor4) -> PolySym2:
    """Exact potential h with R(h) = -W/2 for W satisfying all constraints.

    Four stages of homotopy inversion and correction; every stage checks
    the closedness it relies on and raises on violation.
    """
    nv = w.nv
    if not w.satisfies_weyl_constraints():
        raise ValueError("input violates the Weyl constraints")
    pairs = index_pairs(nv)

    # stage 1: W_{.. al be} = d f^{(al be)} with f = I_2 of the pair 2-form
    f: Dict[Tuple[int, int, int], ExactPoly] = {}
    for (al, be) in pairs:
        omega = PolyForm(
            nv,
            2,
            {
                (mu, nu): w.get4(mu, nu, al, be)
                for (mu, nu) in pairs
                if not w.get4(mu, nu, al, be).is_zero()
            },
        )
        if not exterior_derivative(omega).is_zero():
            raise ValueError("second Bianchi identity fails: pair form not closed")
        one = poincare_homotopy(omega)
        for mu in range(nv):
            f[(mu, al, be)] = one.get((mu,))

    def f_at(mu, al, be):
        if al == be:
            return ExactPoly.zero(nv)
        if al < be:
            return f[(mu, al, be)]
        return -f[(mu, be, al)]

    # stage 2: make the cyclic sum of f vanish by an exact 2-form shift
    f3 = PolyForm(nv, 3, {})
    comp3: Dict[Tuple[int, ...], ExactPoly] = {}
    for a in range(nv):
        for b in range(a + 1, nv):
            for c in range(b + 1, nv):
                # antisymmetrization of f_{nu al be} dX^nu ^ dX^al ^ dX^be:
                # f is already antisymmetric in its last two slots
                s = f_at(a, b, c) - f_at(b, a, c) + f_at(c, a, b)
                if not s.is_zero():
                    comp3[(a, b, c)] = s
    f3 = PolyForm(nv, 3, comp3)
    if not exterior_derivative(f3).is_zero():
        raise ValueError("first Bianchi identity fails: cyclic 3-form not closed")
    theta_form = poincare_homotopy(f3.scale(F(-1, 3)))

    def theta(al, be):
        if al == be:
            return ExactPoly.zero(nv)
        if al < be:
            return theta_form.get((al, be))
        return -theta_form.get((be, al))

    ftil: Dict[Tuple[int, int, int], ExactPoly] = {}
    for (al, be) in pairs:
        for mu in range(nv):
            ftil[(mu, al, be)] = f_at(mu, al, be) + theta(al, be).diff(mu)

    def ftil_at(mu, al, be):
        if al == be:
            return ExactPoly.zero(nv)
        if al < be:
            return ftil[(mu, al, be)]
        return -ftil[(mu, be, al)]

    for a in range(nv):
        for b in range(nv):
            for c in range(nv):
                s = ftil_at(a, b, c) + ftil_at(b, c, a) + ftil_at(c, a, b)
                if not s.is_zero():
                    raise AssertionError("cyclic correction failed")

    # stage 3: f~_{mu .} = d(potential row) via the homotopy again
    hrow: Dict[Tuple[int, int], ExactPoly] = {}
    for mu in range(nv):
        psi = PolyForm(
            nv,
            2,
            {
                (al, be): ftil_at(mu, al, be)
                for (al, be) in pairs
                if not ftil_at(mu, al, be).is_zero()
            },
        )
        if not exterior_derivative(psi).is_zero():
            raise ValueError("row form not closed at the potential stage")
        g = poincare_homotopy(psi)
        for be in range(nv):
            hrow[(mu, be)] = g.get((be,))

    # stage 4: symmetrize by a gradient shift
    chi = PolyForm(
        nv,
        2,
        {
            (al, be): hrow[(al, be)] - hrow[(be, al)]
            for (al, be) in pairs
            if not (hrow[(al, be)] - hrow[(be, al)]).is_zero()
        },
    )
    if not exterior_derivative(chi).is_zero():
        raise ValueError("antisymmetric part is not closed")
    v = poincare_homotopy(chi)
    comp: Dict[Tuple[int, int], ExactPoly] = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            comp[(mu, nu)] = hrow[(mu, nu)] + v.get((mu,)).diff(nu)
    h = PolySym2(nv, comp)
    # drop degree-(<2) junk: only the top homogeneous part carries curvature
    check = linearized_riemann(h) - w.scale(F(-1, 2))
    if not check.is_zero():
        raise AssertionError("potential reconstruction failed")
    return h


# ---------------------------------------------------------------------------
# invariant form and signature on W_p
# ---------------------------------------------------------------------------


def _tensor4_q(n: int, p: int, w1: PolyTensor4, w2: PolyTensor4) -> Fraction:
    """Full eta-contraction on the slots, weighted monomial form on the
    coefficients; diagonal on stored coordinates."""
    total = F(0)
    fact = math.factorial(p) if p >= 0 else 1
    for (a, b), p1 in w1.comp.items():
        p2 = w2.comp.get((a, b))
        if p2 is None:
            continue
        mu, nu = w1.pairs[a]
        al, be = w1.pairs[b]
        sgn = _eta_sign(mu) * _eta_sign(nu) * _eta_sign(al) * _eta_sign(be)
        mult = 4 * (2 if a != b else 1)
        for e, c1 in p1.terms.items():
            c2 = p2.terms.get(e)
            if not c2:
                continue
            w_e = F(math.prod(math.factorial(k) for k in e), fact)
            sign_e = -w_e if e[0] % 2 else w_e
            total = total + c1 * c2 * sign_e * sgn * mult
    return total


def invariant_form_Wp(space: WeylSpace, w1: PolyTensor4, w2: PolyTensor4) -> Fraction:
    return _tensor4_q(space.n, space.p, w1, w2)


def signature_Wp(n: int, p: int, space: WeylSpace | None = None, check_invariance: bool = True) -> Tuple[int, int]:
    """Signature of the invariant form on W_p, normalized so n+ >= n-.

    The form is canonical only up to a global sign; the convention here
    reports the larger count first (for n = 3 the two counts coincide).
    Infinitesimal invariance of the constructed form is asserted on
    sampled basis pairs before diagonalizing.
    """
    if space is None:
        space = build_Wp(n, p)
    if check_invariance:
        _assert_form_invariance(space)
    gram = [
        [F(0)] * space.dim for _ in range(space.dim)
    ]
    for i in range(space.dim):
        for j in range(i, space.dim):
            v = _tensor4_q(n, p, space.basis[i], space.basis[j])
            gram[i][j] = v
            gram[j][i] = v
    plus, minus, zero = signature_of_form(gram)
    if zero:
        raise AssertionError("invariant form degenerate on W_p")
    if minus > plus:
        plus, minus = minus, plus
    return plus, minus


def _assert_form_invariance(space: WeylSpace, samples: int = 4):
    import random as _random

    rng = _random.Random(814)
    from .lorentz import all_generators

    gens = all_generators(space.n)
    for _ in range(samples):
        name, g = rng.choice(gens)
        w1 = rng.choice(space.basis)
        w2 = rng.choice(space.basis)
        lhs = _tensor4_q(space.n, space.p, algebra_action_tensor4(g.matrix, w1), w2)
        rhs = _tensor4_q(space.n, space.p, w1, algebra_action_tensor4(g.matrix, w2))
        if lhs + rhs != 0:
            raise AssertionError("constructed form is not infinitesimally invariant")


def signature_Wp_expected(n: int, p: int) -> Tuple[int, int]:
    common = F((p + 1) * (p + n + 2), (n - 1) * (p + n)) * math.comb(p + n, p + 3)
    plus = F(n * n + (n + 1) * p + 3, 2) * common
    minus = F(n * p + 4 * n + p, 2) * common
    assert plus.denominator == 1 and minus.denominator == 1
    return int(plus), int(minus)


# ---------------------------------------------------------------------------
# algebra actions on tensors
# ---------------------------------------------------------------------------


def _ax_fields(mat: Matrix, nv: int) -> List[ExactPoly]:
    out = []
    for mu in range(nv):
        p = ExactPoly.zero(nv)
        for nu in range(nv):
            if mat[mu][nu]:
                p = p + mat[mu][nu] * ExactPoly.variable(nv, nu)
        out.append(p)
    return out


def algebra_action_sym2(mat, h: PolySym2) -> PolySym2:
    """(a.h)_{mu nu} = -(aX) d h_{mu nu} - a^s_mu h_{s nu} - a^s_nu h_{mu s}."""
    m = mat.matrix if hasattr(mat, "matrix") else mat
    nv = h.nv
    ax = _ax_fields(m, nv)
    comp = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            p = ExactPoly.zero(nv)
            base = h.get(mu, nu)
            for s in range(nv):
                if ax[s]:
                    d = base.diff(s)
                    if not d.is_zero():
                        p = p - ax[s] * d
                if m[s][mu]:
                    p = p - m[s][mu] * h.get(s, nu)
                if m[s][nu]:
                    p = p - m[s][nu] * h.get(mu, s)
            comp[(mu, nu)] = p
    return PolySym2(nv, comp)


def algebra_action_tensor4(mat, w: PolyTensor4) -> PolyTensor4:
    m = mat.matrix if hasattr(mat, "matrix") else mat
    nv = w.nv
    ax = _ax_fields(m, nv)
    pairs = index_pairs(nv)
    comp = {}
    for a, (mu, nu) in enumerate(pairs):
        for b in range(a, len(pairs)):
            al, be = pairs[b]
            base = w.get4(mu, nu, al, be)
            p = ExactPoly.zero(nv)
            for s in range(nv):
                if ax[s]:
                    d = base.diff(s)
                    if not d.is_zero():
                        p = p - ax[s] * d
                if m[s][mu]:
                    p = p - m[s][mu] * w.get4(s, nu, al, be)
                if m[s][nu]:
                    p = p - m[s][nu] * w.get4(mu, s, al, be)
                if m[s][al]:
                    p = p - m[s][al] * w.get4(mu, nu, s, be)
                if m[s][be]:
                    p = p - m[s][be] * w.get4(mu, nu, al, s)
            if not p.is_zero():
                comp[(a, b)] = p
    return PolyTensor4(nv, comp)


# ---------------------------------------------------------------------------
# potential-side solution spaces and highest-weight vectors
# ---------------------------------------------------------------------------


def _sym2_coords(nv: int, degree: int):
    monos = monomials_of_degree(nv, degree)
    midx = {e: i for i, e in enumerate(monos)}
    slots = [(mu, nu) for mu in range(nv) for nu in range(mu, nv)]
    sidx = {s: i for i, s in enumerate(slots)}
    return monos, midx, slots, sidx


def sym2_to_row(h: PolySym2, degree: int) -> Row:
    monos, midx, slots, sidx = _sym2_coords(h.nv, degree)
    out: Row = {}
    for (mu, nu), p in h.comp.items():
        for e, c in p.terms.items():
            out[midx[e] * len(slots) + sidx[(mu, nu)]] = c
    return out


def row_to_sym2(row: Row, nv: int, degree: int) -> PolySym2:
    monos, midx, slots, sidx = _sym2_coords(nv, degree)
    comp: Dict[Tuple[int, int], ExactPoly] = {}
    for flat, c in row.items():
        m, s = divmod(flat, len(slots))
        key = slots[s]
        comp[key] = comp.get(key, ExactPoly.zero(nv)) + ExactPoly.monomial(
            nv, monos[m], c
        )
    return PolySym2(nv, comp)


def harmonic_tracefree_sym2_space(n: int, degree: int) -> List[PolySym2]:
    """Basis of componentwise wave-harmonic, eta-trace-free Sym^2 tensors."""
    nv = n + 1
    monos, midx, slots, sidx = _sym2_coords(nv, degree)
    ncols = len(monos) * len(slots)

    def col(e, mu, nu):
        if mu > nu:
            mu, nu = nu, mu
        return midx[e] * len(slots) + sidx[(mu, nu)]

    rows: List[Row] = []
    if degree >= 2:
        lower = monomial_index(nv, degree - 2)
        for (mu, nu) in slots:
            block: List[Row] = [dict() for _ in range(len(lower))]
            for e in monos:
                img = wave_operator(ExactPoly.monomial(nv, e))
                for e2, c in img.terms.items():
                    block[lower[e2]][col(e, mu, nu)] = c
            rows.extend(r for r in block if r)
    for e in monos:
        r: Row = {}
        for mu in range(nv):
            r[col(e, mu, mu)] = r.get(col(e, mu, mu), F(0)) + _eta_sign(mu)
        rows.append(r)
    kernel = nullspace(rows, ncols)
    return [row_to_sym2(v, nv, degree) for v in kernel]


def transverse_solution_space(n: int, degree: int) -> List[PolySym2]:
    """Wave-harmonic, eta-trace-free tensors with h_{mu nu} X^mu = 0.

    These solve the linearized Einstein equations (they are automatically
    divergence free) and realize the same representation as W_{degree-2}.
    """
    nv = n + 1
    monos, midx, slots, sidx = _sym2_coords(nv, degree)
    ncols = len(monos) * len(slots)

    def col(e, mu, nu):
        if mu > nu:
            mu, nu = nu, mu
        return midx[e] * len(slots) + sidx[(mu, nu)]

    rows: List[Row] = []
    if degree >= 2:
        lower = monomial_index(nv, degree - 2)
        for (mu, nu) in slots:
            block: List[Row] = [dict() for _ in range(len(lower))]
            for e in monos:
                img = wave_operator(ExactPoly.monomial(nv, e))
                for e2, c in img.terms.items():
                    block[lower[e2]][col(e, mu, nu)] = c
            rows.extend(r for r in block if r)
    for e in monos:
        r = {}
        for mu in range(nv):
            r[col(e, mu, mu)] = r.get(col(e, mu, mu), F(0)) + _eta_sign(mu)
        rows.append(r)
    upper = monomial_index(nv, degree + 1)
    for nu in range(nv):
        block = [dict() for _ in range(len(upper))]
        for e in monos:
            for mu in range(nv):
                img = ExactPoly.variable(nv, mu) * ExactPoly.monomial(nv, e)
                for e2, c in img.terms.items():
                    key = col(e, mu, nu)
                    block[upper[e2]][key] = block[upper[e2]].get(key, F(0)) + c
        rows.extend(r for r in block if r)
    kernel = nullspace(rows, ncols)
    return [row_to_sym2(v, nv, degree) for v in kernel]


# ---------------------------------------------------------------------------
# highest-weight vectors in the potential spaces
# ---------------------------------------------------------------------------


def _sym2_constraint_rows(n: int, degree: int, transverse: bool):
    nv = n + 1
    monos, midx, slots, sidx = _sym2_coords(nv, degree)
    ncols = len(monos) * len(slots)

    def col(e, mu, nu):
        if mu > nu:
            mu, nu = nu, mu
        return midx[e] * len(slots) + sidx[(mu, nu)]

    rows: List[Row] = []
    if degree >= 2:
        lower = monomial_index(nv, degree - 2)
        for (mu, nu) in slots:
            block: List[Row] = [dict() for _ in range(len(lower))]
            for e in monos:
                img = wave_operator(ExactPoly.monomial(nv, e))
                for e2, c in img.terms.items():
                    block[lower[e2]][col(e, mu, nu)] = c
            rows.extend(r for r in block if r)
    for e in monos:
        r: Row = {}
        for mu in range(nv):
            r[col(e, mu, mu)] = r.get(col(e, mu, mu), F(0)) + _eta_sign(mu)
        rows.append(r)
    if transverse:
        upper = monomial_index(nv, degree + 1)
        for nu in range(nv):
            block = [dict() for _ in range(len(upper))]
            for e in monos:
                for mu in range(nv):
                    img = ExactPoly.variable(nv, mu) * ExactPoly.monomial(nv, e)
                    for e2, c in img.terms.items():
                        key = col(e, mu, nu)
                        block[upper[e2]][key] = block[upper[e2]].get(key, F(0)) + c
            rows.extend(r for r in block if r)
    return rows, ncols


def _sym2_operator_rows(mat, n: int, degree: int) -> List[Row]:
    """Sparse rows of the algebra action on the degree-d Sym^2 coordinates."""
    nv = n + 1
    monos, midx, slots, sidx = _sym2_coords(nv, degree)
    rows: List[Row] = [dict() for _ in range(len(monos) * len(slots))]
    for j_m, e in enumerate(monos):
        for (mu, nu) in slots:
            src = j_m * len(slots) + sidx[(mu, nu)]
            unit = PolySym2(nv, {(mu, nu): ExactPoly.monomial(nv, e)})
            img = algebra_action_sym2(mat, unit)
            for (a, b), poly in img.comp.items():
                for e2, c in poly.terms.items():
                    tgt = midx[e2] * len(slots) + sidx[(a, b)]
                    rows[tgt][src] = rows[tgt].get(src, F(0)) + c
    for r in rows:
        for k in [k for k, v in r.items() if not v]:
            del r[k]
    return rows


def hw_vectors_sym2(
    n: int,
    degree: int,
    weight: Sequence[Fraction],
    transverse: bool = False,
) -> List[PolySym2]:
    """Highest-weight vectors in the (transverse) solution space.

    Stacks the space constraints, the Cartan eigenvalue conditions for
    the requested eps-weight and the kernels of all raising operators
    into one sparse exact system.
    """
    from .lorentz import cartan_generators, raising_operators

    nv = n + 1
    rows, ncols = _sym2_constraint_rows(n, degree, transverse)
    rows = list(rows)
    for hmat, lam in zip(cartan_generators(n), weight):
        op = _sym2_operator_rows(hmat, n, degree)
        for i, r in enumerate(op):
            rr = dict(r)
            if lam:
                v = rr.get(i, F(0)) - lam
                if v:
                    rr[i] = v
                else:
                    rr.pop(i, None)
            if rr:
                rows.append(rr)
    for _, rmat in raising_operators(n):
        for r in _sym2_operator_rows(rmat, n, degree):
            if r:
                rows.append(r)
    kernel = nullspace(rows, ncols)
    return [row_to_sym2(v, nv, degree) for v in kernel]


def _zminus(nv: int, which: int, conj: bool = False) -> ExactPoly:
    """Coordinate functions Z^{-1} = X^0 + X^1, Z^{-2} = X^2 + i X^3."""
    i = GaussianRational.i()
    if which == 1:
        return ExactPoly.variable(nv, 0) + ExactPoly.variable(nv, 1)
    z = ExactPoly.variable(nv, 2) + ExactPoly.variable(nv, 3) * (-i if conj else i)
    return z


def _cov(nv: int, which: int, conj: bool = False) -> List[object]:
    """Covector components of dZ^{-1}, dZ^{-2}."""
    i = GaussianRational.i()
    u = [F(0)] * nv
    if which == 1:
        u[0] = F(1)
        u[1] = F(1)
        return u
    u[2] = GaussianRational(1)
    u[3] = -i if conj else i
    return u


def _outer_sq(nv: int, f: ExactPoly, u) -> PolySym2:
    """f * u (x) u for a covector component list u."""
    comp = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            c = u[mu] * u[nu]
            if c:
                comp[(mu, nu)] = f * c
    return PolySym2(nv, comp)


def _outer_sym(nv: int, f: ExactPoly, u, v) -> PolySym2:
    """f * (u (x) v + v (x) u)."""
    comp = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            c = u[mu] * v[nu] + u[nu] * v[mu]
            if c:
                comp[(mu, nu)] = f * c
    return PolySym2(nv, comp)


def catalog_gauge1(n: int, p: int) -> PolySym2:
    """(Z^{-1})^{p+2} dZ^{-1} (x) dZ^{-1}."""
    nv = n + 1
    return _outer_sq(nv, _zminus(nv, 1) ** (p + 2), _cov(nv, 1))


def catalog_gauge2(n: int, p: int) -> PolySym2:
    """(Z^{-1})^{p+1} Z^{-2} dZ^{-1}(x)dZ^{-1}
       - (Z^{-1})^{p+2} (dZ^{-1} (x) dZ^{-2} + dZ^{-2} (x) dZ^{-1}) / 2."""
    nv = n + 1
    u, v = _cov(nv, 1), _cov(nv, 2)
    z1, z2 = _zminus(nv, 1), _zminus(nv, 2)
    first = _outer_sq(nv, z1 ** (p + 1) * z2, u)
    second = _outer_sym(nv, z1 ** (p + 2), u, v).scale(F(1, 2))
    return first - second


def catalog_weyl_type(n: int, p: int, conj: bool = False) -> PolySym2:
    """(Z^{-1} dZ^{-2} - Z^{-2} dZ^{-1})^{(x)2} (Z^{-1})^p, expanded."""
    nv = n + 1
    u, v = _cov(nv, 1), _cov(nv, 2, conj)
    z1, z2 = _zminus(nv, 1), _zminus(nv, 2, conj)
    t1 = _outer_sq(nv, z1 ** (p + 2), v)
    t2 = _outer_sym(nv, z1 ** (p + 1) * z2, u, v)
    t3 = _outer_sq(nv, z1**p * z2 * z2, u)
    return t1 - t2 + t3


def catalog_chiral_printed(n: int, p: int, conj: bool = False) -> PolySym2:
    """The bracket-squared closed form as printed in the catalog:
    (Z^{-1})^p [ Z^{-2} dZ^{-1} - Z^{-2} dZ^{-2} ]^{(x)2}  (the second
    coefficient repeats Z^{-2} where the pattern of the general family
    suggests Z^{-1}; kept verbatim so the comparison can flag it)."""
    nv = n + 1
    u = _cov(nv, 1)
    v = _cov(nv, 2)  # the printed form uses dZ^{-2} unconjugated in both
    z1 = _zminus(nv, 1)
    z2 = _zminus(nv, 2, conj)
    w = [z2 * (a - b) for a, b in zip(u, v)]  # Z^{-2} (dZ^{-1} - dZ^{-2})
    comp = {}
    for mu in range(nv):
        for nu in range(mu, nv):
            comp[(mu, nu)] = w[mu] * w[nu] * z1**p
    return PolySym2(nv, comp)


def gauge_field_1(n: int, p: int) -> List[ExactPoly]:
    """xi = (Z^{-1})^{p+3} e_{+1} / (2(p+3)), contravariant components."""
    nv = n + 1
    f = _zminus(nv, 1) ** (p + 3) / (2 * (p + 3))
    out = [ExactPoly.zero(nv) for _ in range(nv)]
    out[0] = -f
    out[1] = f
    return out


def gauge_field_2(n: int, p: int) -> List[ExactPoly]:
    """xi = ((Z^{-1})^{p+2} Z^{-2} e_{+1} - (Z^{-1})^{p+3} e_{+2}) / (2(p+2))."""
    nv = n + 1
    i = GaussianRational.i()
    z1, z2 = _zminus(nv, 1), _zminus(nv, 2)
    f = z1 ** (p + 2) * z2 / (2 * (p + 2))
    g = z1 ** (p + 3) / (2 * (p + 2))
    out = [ExactPoly.zero(nv) for _ in range(nv)]
    out[0] = -f
    out[1] = f
    out[2] = -g
    out[3] = -g * i
    return out


def proportionality(a: PolySym2, b: PolySym2):
    """Scalar c with a = c b, or None."""
    if b.is_zero():
        return None
    key = next(iter(b.comp))
    pb = b.comp[key]
    pa = a.comp.get(key)
    if pa is None:
        return None
    e = next(iter(pb.terms))
    ca = pa.terms.get(e)
    if ca is None:
        return None
    c = ca / pb.terms[e]
    return c if (a - b.scale(c)).is_zero() else None


@dataclass
class HWReport:
    label: str
    weight: Tuple
    dim: int
    vector: PolySym2 | None
    de_donder: bool
    transverse: bool
    in_riemann_kernel: bool
    catalog_match: str
    flags: List[str] = field(default_factory=list)


def hw_vectors_weyl(n: int, p: int) -> List[HWReport]:
    """Construct highest-weight vectors and compare with cataloged forms.

    Works inside the wave-harmonic trace-free degree-(p+2) potentials.
    For every report the constructed vector is authoritative; closed-form
    mismatches are flagged, never silently repaired.
    """
    l = cartan_rank(n)
    degree = p + 2

    def wt(*vals):
        out = [F(0)] * l
        for i, v in enumerate(vals):
            out[i] = F(v)
        return tuple(out)

    jobs = [
        (f"({p+4})w1", wt(p + 4), catalog_gauge1(n, p), True),
        (f"({p+2})w1+w2", wt(p + 3, 1), catalog_gauge2(n, p), True),
        (
            f"{p}w1+2w2" if n > 3 else f"{p}w1+({p+4})w2",
            wt(p + 2, 2),
            catalog_weyl_type(n, p) if n > 3 else catalog_chiral_printed(n, p),
            False,
        ),
    ]
    if n == 3:
        jobs.append(
            (
                f"({p+4})w1+{p}w2",
                wt(p + 2, -2),
                catalog_chiral_printed(n, p, conj=True),
                False,
            )
        )

    reports: List[HWReport] = []
    for label, weight, catalog, expect_gauge in jobs:
        vecs = hw_vectors_sym2(n, degree, weight, transverse=False)
        flags: List[str] = []
        if len(vecs) != 1:
            flags.append(f"expected a one-dimensional space, got {len(vecs)}")
        vec = vecs[0] if vecs else None
        de_donder = transverse = in_ker = False
        match = "missing"
        if vec is not None:
            de_donder = all(d.is_zero() for d in vec.divergence())
            transverse = all(r.is_zero() for r in vec.radial_contraction())
            in_ker = linearized_riemann(vec).is_zero()
            c = proportionality(vec, catalog)
            if c is None:
                match = "mismatch"
                flags.append(
                    "constructed vector is not proportional to the cataloged "
                    "closed form; the constructed vector is authoritative"
                )
            elif c == 1:
                match = "exact"
            else:
                match = f"proportional ({c})"
            if expect_gauge and not in_ker:
                flags.append("expected pure-gauge vector has nonzero curvature")
            if not expect_gauge and in_ker:
                flags.append("expected curvature-carrying vector is pure gauge")
        reports.append(
            HWReport(label, weight, len(vecs), vec, de_donder, transverse, in_ker, match, flags)
        )

    # Lie-derivative identities for the two pure-gauge families
    r1 = reports[0]
    if r1.vector is not None:
        lie1 = lie_eta(gauge_field_1(n, p))
        c = proportionality(lie1, catalog_gauge1(n, p))
        if c == 1:
            r1.flags.append(
                "Lie-derivative identity holds exactly with the vector field "
                f"of coefficient degree {p+3} (the ({p+4})w1-labeled one); "
                f"the alternative ({p+2})w1 pairing fails already by degree"
            )
        else:
            r1.flags.append("Lie-derivative identity FAILED for the cataloged field")
    r2 = reports[1]
    if r2.vector is not None and n >= 3:
        lie2 = lie_eta(gauge_field_2(n, p))
        c = proportionality(lie2, r2.vector)
        if c is not None:
            r2.flags.append(f"Lie-derivative identity holds (factor {c})")
        else:
            r2.flags.append("Lie-derivative identity FAILED for the cataloged field")
    # corrected chiral candidate for n = 3
    if n == 3:
        for rep, conj in ((reports[2], False), (reports[3], True)):
            if rep.vector is None:
                continue
            alt = catalog_weyl_type(n, p, conj=conj)
            c = proportionality(rep.vector, alt)
            if c is not None:
                rep.flags.append(
                    "the bracket-squared pattern with the repeated factor "
                    "replaced by Z^{-1} matches the constructed vector "
                    f"(factor {c})"
                )
    return reports


def chiral_hw_vector(p: int, sign: int) -> PolySym2:
    """n = 3 chiral highest-weight solution of degree p+2, transverse.

    ``sign`` +1 selects weight (p+2, +2), -1 the conjugate family.
    """
    vecs = hw_vectors_sym2(3, p + 2, (F(p + 2), F(2 * sign)), transverse=True)
    if len(vecs) != 1:
        raise AssertionError(f"chiral highest-weight space has dim {len(vecs)}")
    return vecs[0]


def weyl_type_hw_vector(n: int, p: int) -> PolySym2:
    """Transverse trace-free wave solution of degree p+2, highest weight."""
    vecs = hw_vectors_sym2(n, p + 2, (F(p + 2), F(2)) + (F(0),) * (cartan_rank(n) - 2), transverse=True)
    if len(vecs) != 1:
        raise AssertionError(f"highest-weight space has dim {len(vecs)}")
    return vecs[0]
