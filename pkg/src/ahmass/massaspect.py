"""Mass-aspect tensors on the sphere at infinity.

A mass aspect is a symmetric 2-tensor on S^{n-1} stored through ambient
polynomial components m_ij(x^1..x^n); the transverse representative
(zero contraction with the position vector, as an on-sphere identity) is
the canonical one.  All equalities between such tensors are equalities
of the on-sphere classes and are decided exactly with
:func:`ahmass.poly.vanishes_on_sphere`.

The sphere covariant calculus is extrinsic: ambient flat derivative
followed by tangential projection (Gauss formula).  The decay order k of
the aspect enters only through the weighted boost action
``a_i . m = -nabla_{frak a_i} m + k x^i m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .lorentz import LorentzElement, u_of_A
from .poly import ExactPoly, sphere_integral, vanishes_on_sphere

F = Fraction


def _zero(n: int) -> ExactPoly:
    return ExactPoly.zero(n)


def _x(n: int, i: int) -> ExactPoly:
    return ExactPoly.variable(n, i)


@dataclass
class SphereTensor:
    """Symmetric 2-tensor with polynomial ambient components.

    ``comp[(i, j)]`` with i <= j holds the polynomial component; ``k`` is
    the decay order carried by the aspect (0 admitted only for raw data).
    """

    n: int
    k: int
    comp: Dict[Tuple[int, int], ExactPoly]

    def __post_init__(self):
        clean = {}
        for (i, j), p in self.comp.items():
            if i > j:
                i, j = j, i
            if not p.is_zero():
                prev = clean.get((i, j))
                clean[(i, j)] = p if prev is None else prev + p
        self.comp = clean

    def get(self, i: int, j: int) -> ExactPoly:
        if i > j:
            i, j = j, i
        return self.comp.get((i, j), _zero(self.n))

    def map(self, fn) -> "SphereTensor":
        return SphereTensor(self.n, self.k, {ij: fn(p) for ij, p in self.comp.items()})

    def __add__(self, other: "SphereTensor") -> "SphereTensor":
        out = dict(self.comp)
        for ij, p in other.comp.items():
            out[ij] = out.get(ij, _zero(self.n)) + p
        return SphereTensor(self.n, self.k, out)

    def __sub__(self, other: "SphereTensor") -> "SphereTensor":
        return self + other.scale(F(-1))

    def scale(self, c) -> "SphereTensor":
        return self.map(lambda p: p * c)

    def radial_contraction(self, i: int) -> ExactPoly:
        """sum_j m_ij x^j."""
        out = _zero(self.n)
        for j in range(self.n):
            out = out + self.get(i, j) * _x(self.n, j)
        return out

    def is_transverse(self) -> bool:
        return all(
            vanishes_on_sphere(self.radial_contraction(i)) for i in range(self.n)
        )

    def trace_sigma(self) -> ExactPoly:
        """Round-metric trace: sum_i m_ii - sum_ij x^i x^j m_ij on the sphere."""
        out = _zero(self.n)
        for i in range(self.n):
            out = out + self.get(i, i)
        for i in range(self.n):
            out = out - _x(self.n, i) * self.radial_contraction(i)
        return out

    def equal_on_sphere(self, other: "SphereTensor") -> bool:
        d = self - other
        return all(vanishes_on_sphere(p) for p in d.comp.values())

    def is_zero_on_sphere(self) -> bool:
        return all(vanishes_on_sphere(p) for p in self.comp.values())

    def conjugate(self) -> "SphereTensor":
        return self.map(lambda p: p.conjugate())

    def evaluate_float(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for (i, j), p in self.comp.items():
            v = complex(p.evaluate_float(x))
            out[i, j] += v
            if i != j:
                out[j, i] += v
        if np.allclose(out.imag, 0.0):
            return out.real
        return out


def round_metric_tensor(n: int, k: int) -> SphereTensor:
    """Transverse representative of the round metric: delta - x (x) x."""
    comp = {}
    for i in range(n):
        for j in range(i, n):
            p = -_x(n, i) * _x(n, j)
            if i == j:
                p = p + 1
            comp[(i, j)] = p
    return SphereTensor(n, k, comp)


def transversalize(m: SphereTensor, k: int | None = None) -> SphereTensor:
    """Leading-order adjustment making the aspect transverse.

    m~_ij = m_ij - m_aj x^a x_i - m_ia x^a x_j
            + (m_ab x^a x^b / k) ((k-1) x_i x_j + delta_ij)

    Linear in m, fixes transverse inputs as on-sphere classes.
    """
    if k is None:
        k = m.k
    if k == 0:
        raise ValueError("decay order k must be positive")
    n = m.n
    radial = [m.radial_contraction(i) for i in range(n)]
    double = _zero(n)
    for a in range(n):
        double = double + radial[a] * _x(n, a)
    comp = {}
    for i in range(n):
        for j in range(i, n):
            p = m.get(i, j) - radial[j] * _x(n, i) - radial[i] * _x(n, j)
            corr = _x(n, i) * _x(n, j) * (k - 1)
            if i == j:
                corr = corr + 1
            p = p + double * corr / k
            comp[(i, j)] = p
    return SphereTensor(n, k, comp)


# ---------------------------------------------------------------------------
# tangent fields and extrinsic covariant calculus
# ---------------------------------------------------------------------------


@dataclass
class TangentField:
    """Polynomial vector field on R^n tangent to the unit sphere."""

    n: int
    comp: List[ExactPoly]

    def __post_init__(self):
        radial = _zero(self.n)
        for a in range(self.n):
            radial = radial + self.comp[a] * _x(self.n, a)
        if not vanishes_on_sphere(radial):
            raise ValueError("field is not tangent to the sphere")

    def derive(self, f: ExactPoly) -> ExactPoly:
        out = _zero(self.n)
        for a in range(self.n):
            out = out + self.comp[a] * f.diff(a)
        return out


def boost_field(n: int, i: int) -> TangentField:
    """frak a_i = (1+|x|^2)/2 d_i - x^i x^a d_a (1-based direction)."""
    if not 1 <= i <= n:
        raise ValueError("direction out of range")
    idx = i - 1
    norm2 = _zero(n)
    for a in range(n):
        norm2 = norm2 + _x(n, a) ** 2
    comp = []
    for a in range(n):
        p = -_x(n, idx) * _x(n, a)
        if a == idx:
            p = p + (norm2 + 1) / 2
        comp.append(p)
    return TangentField(n, comp)


def rotation_field(n: int, i: int, j: int) -> TangentField:
    """frak r_ij = x^i d_j - x^j d_i (1-based)."""
    a, b = i - 1, j - 1
    comp = [_zero(n) for _ in range(n)]
    comp[b] = _x(n, a)
    comp[a] = -_x(n, b)
    return TangentField(n, comp)


def _project_slots(n: int, t: Dict[Tuple[int, int], ExactPoly]) -> Dict[Tuple[int, int], ExactPoly]:
    """Sandwich a (possibly asymmetric) 2-index array with Pi = Id - x (x) x."""

    def entry(i, j):
        return t.get((i, j), _zero(n))

    rad_right = [
        sum((entry(i, b) * _x(n, b) for b in range(n)), _zero(n)) for i in range(n)
    ]
    rad_left = [
        sum((_x(n, a) * entry(a, j) for a in range(n)), _zero(n)) for j in range(n)
    ]
    scalar = sum((rad_right[a] * _x(n, a) for a in range(n)), _zero(n))
    out = {}
    for i in range(n):
        for j in range(n):
            p = (
                entry(i, j)
                - _x(n, i) * rad_left[j]
                - _x(n, j) * rad_right[i]
                + _x(n, i) * _x(n, j) * scalar
            )
            if not p.is_zero():
                out[(i, j)] = p
    return out


def sphere_covariant_derivative(t, X: TangentField):
    """nabla^sigma_X of a scalar, tangent field, or symmetric 2-tensor.

    Extrinsic evaluation: ambient directional derivative followed by
    tangential projection on every remaining slot; exact as an on-sphere
    polynomial identity (the answer only depends on the on-sphere class
    of a transverse input).
    """
    n = X.n
    if isinstance(t, ExactPoly):
        return X.derive(t)
    if isinstance(t, TangentField):
        der = [X.derive(c) for c in t.comp]
        radial = sum((der[a] * _x(n, a) for a in range(n)), _zero(n))
        return TangentField(
            n, [der[a] - _x(n, a) * radial for a in range(n)]
        )
    if isinstance(t, SphereTensor):
        der = {}
        for i in range(n):
            for j in range(n):
                der[(i, j)] = X.derive(t.get(i, j))
        full = _project_slots(n, der)
        # derivative and projection both preserve the symmetry
        upper = {
            (i, j): p for (i, j), p in full.items() if i <= j and not p.is_zero()
        }
        return SphereTensor(t.n, t.k, upper)
    raise TypeError(f"cannot differentiate {type(t)!r}")


def gradient_field(n: int, f: ExactPoly) -> TangentField:
    """Tangential gradient of a scalar."""
    der = [f.diff(a) for a in range(n)]
    radial = sum((der[a] * _x(n, a) for a in range(n)), _zero(n))
    return TangentField(n, [der[a] - _x(n, a) * radial for a in range(n)])


def divergence_sigma(t) -> object:
    """Round-metric divergence of a tangent field or symmetric 2-tensor."""
    if isinstance(t, TangentField):
        n = t.n
        out = _zero(n)
        for a in range(n):
            for b in range(n):
                d = t.comp[b].diff(a)
                if a == b:
                    out = out + d
                out = out - _x(n, a) * _x(n, b) * d
        return out
    if isinstance(t, SphereTensor):
        n = t.n
        # (div m)_c = Pi^{ab} (nabla m)_{abc}; projections on a come free
        # against the Pi-contraction, on b against transversality of m,
        # so only the c slot needs an explicit projection.
        raw = []
        for c in range(n):
            s = _zero(n)
            for a in range(n):
                for b in range(n):
                    d = t.get(b, c).diff(a)
                    if a == b:
                        s = s + d
                    s = s - _x(n, a) * _x(n, b) * d
            raw.append(s)
        radial = sum((raw[c] * _x(n, c) for c in range(n)), _zero(n))
        return TangentField(n, [raw[c] - _x(n, c) * radial for c in range(n)])
    raise TypeError(f"cannot take divergence of {type(t)!r}")


def laplace_sigma(n: int, f: ExactPoly) -> ExactPoly:
    """Round-sphere Laplacian of a scalar, as an on-sphere polynomial."""
    return divergence_sigma(gradient_field(n, f))


def divdiv_sigma(m: SphereTensor) -> ExactPoly:
    """div^sigma div^sigma of a transverse symmetric 2-tensor."""
    return divergence_sigma(divergence_sigma(m))


# ---------------------------------------------------------------------------
# algebra actions carrying the decay weight
# ---------------------------------------------------------------------------


def rotation_endomorphism_action(n: int, i: int, j: int, m: SphereTensor) -> SphereTensor:
    """Transverse representative of m(r_ij(.), .) + m(., r_ij(.)).

    r_ij U = U^i d_j - U^j d_i acts on tangent vectors only modulo the
    radial direction, so the ambient formula is sandwiched with the
    tangential projector.
    """
    a, b = i - 1, j - 1
    raw: Dict[Tuple[int, int], ExactPoly] = {}
    for c in range(n):
        for d in range(n):
            p = _zero(n)
            if c == a:
                p = p + m.get(b, d)
            if c == b:
                p = p - m.get(a, d)
            if d == a:
                p = p + m.get(c, b)
            if d == b:
                p = p - m.get(c, a)
            if not p.is_zero():
                raw[(c, d)] = p
    full = _project_slots(n, raw)
    upper = {(c, d): p for (c, d), p in full.items() if c <= d}
    return SphereTensor(n, m.k, upper)


def boost_action(i: int, m: SphereTensor, k: int | None = None) -> SphereTensor:
    """a_i . m = -nabla^sigma_{frak a_i} m + k x^i m  (m must be transverse)."""
    if k is None:
        k = m.k
    if not m.is_transverse():
        raise ValueError("mass aspect is not transverse")
    n = m.n
    out = sphere_covariant_derivative(m, boost_field(n, i)).scale(F(-1))
    out = out + m.map(lambda p: p * _x(n, i - 1) * k)
    out.k = m.k
    return out


def rotation_action(i: int, j: int, m: SphereTensor) -> SphereTensor:
    """r_ij . m = -nabla^sigma_{frak r_ij} m - m(r_ij ., .) - m(., r_ij .)."""
    if not m.is_transverse():
        raise ValueError("mass aspect is not transverse")
    n = m.n
    out = sphere_covariant_derivative(m, rotation_field(n, i, j)).scale(F(-1))
    out = out - rotation_endomorphism_action(n, i, j, m)
    out.k = m.k
    return out


def generator_action(name: str, m: SphereTensor, k: int | None = None) -> SphereTensor:
    """Dispatch on generator labels produced by ``lorentz.all_generators``."""
    if name.startswith("a_"):
        return boost_action(int(name[2:]), m, k)
    if name.startswith("r_"):
        return rotation_action(int(name[2]), int(name[3]), m)
    raise ValueError(f"unknown generator {name!r}")


# ---------------------------------------------------------------------------
# numeric finite group action
# ---------------------------------------------------------------------------


def _boundary_map_and_jacobian(a_inv_matrix: np.ndarray, x: np.ndarray):
    """Projective extension of the boundary action and its Jacobian.

    G(x) = spatial(A^{-1} (1,x)) / time(A^{-1} (1,x)); on the sphere this
    is the boundary value of the ball action.
    """
    n = len(x)
    w = a_inv_matrix @ np.concatenate(([1.0], x))
    y = w[1:] / w[0]
    dw = a_inv_matrix[:, 1:]  # derivative of (1, x) in x is (0, Id)
    jac = dw[1:, :] / w[0] - np.outer(y, dw[0, :]) / w[0]
    return y, jac


def group_action_numeric(
    a: LorentzElement, m: SphereTensor, k: int, nodes: np.ndarray
) -> np.ndarray:
    """Sampled values of u[A]^{k-2} (Abar_* m) at sphere nodes.

    Returns an array of shape (len(nodes), n, n) holding the transverse
    ambient representative (tangentially projected) at each node.
    """
    n = m.n
    ainv = np.array([[float(v) for v in row] for row in a.inverse().matrix])
    out = np.zeros((len(nodes), n, n))
    for q, x in enumerate(nodes):
        y, jac = _boundary_map_and_jacobian(ainv, x)
        mval = np.real(m.evaluate_float(y))
        pushed = jac.T @ mval @ jac
        proj = np.eye(n) - np.outer(x, x)
        pushed = proj @ pushed @ proj
        w = ainv @ np.concatenate(([1.0], x))
        u = 1.0 / w[0]
        out[q] = u ** (k - 2) * pushed
    return out


def sample_tensor(m: SphereTensor, nodes: np.ndarray) -> np.ndarray:
    out = np.zeros((len(nodes), m.n, m.n))
    for q, x in enumerate(nodes):
        out[q] = np.real(m.evaluate_float(x))
    return out


# ---------------------------------------------------------------------------
# random transverse test data
# ---------------------------------------------------------------------------


def random_mass_aspect(n: int, k: int, rng, degree: int = 2, gaussian: bool = False) -> SphereTensor:
    """Random rational symmetric tensor, transversalized to order k."""
    from .gaussian import GaussianRational
    from .poly import monomials_of_degree

    comp = {}
    for i in range(n):
        for j in range(i, n):
            p = _zero(n)
            for d in range(degree + 1):
                for e in monomials_of_degree(n, d):
                    if rng.random() < 0.3:
                        c = F(rng.randint(-4, 4), rng.randint(1, 3))
                        if gaussian:
                            c = GaussianRational(c, F(rng.randint(-2, 2)))
                        if c:
                            p = p + ExactPoly.monomial(n, e, c)
            comp[(i, j)] = p
    return transversalize(SphereTensor(n, k, comp), k)
