"""Exact Lorentz group elements, ball-model actions and weight machinery.

Conventions (fixed once, used everywhere downstream):

* ``eta = diag(-1, 1, ..., 1)`` with the timelike variable ``X^0`` first.
* Finite boosts are parametrized by exact rational points ``(c, s)`` on
  the unit hyperbola ``c^2 - s^2 = 1``; rotations by rational points on
  the circle.  All finite-action tests therefore stay in exact
  arithmetic.
* Group action on polynomials: ``A . P = P o A^{-1}``.  The algebra
  action is its derivative, ``a . P = -(a X)^mu d_mu P``.  Under this
  convention the rotation generator ``r_23`` sends ``X^2`` to ``+X^3``
  (and ``X^3`` to ``-X^2``).
* The boundary conformal factor of an isometry is
  ``u[A](x) = 1 / X^0(A^{-1}(1, x))``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .gaussian import GaussianRational
from .linalg import Row, SpanSolver, nullspace
from .poly import ExactPoly

Matrix = Tuple[Tuple[object, ...], ...]


# ---------------------------------------------------------------------------
# small dense matrix helpers (exact entries)
# ---------------------------------------------------------------------------


def mat_identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p))
        for i in range(n)
    )


def mat_vec(a: Matrix, v: Sequence) -> Tuple:
    return tuple(sum((a[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(a)))


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a[0])))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][j] - b[i][j] for j in range(len(a[0]))) for i in range(len(a))
    )


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(c * a[i][j] for j in range(len(a[0]))) for i in range(len(a)))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][j] + b[i][j] for j in range(len(a[0]))) for i in range(len(a))
    )


def eta_matrix(dim: int) -> Matrix:
    return tuple(
        tuple(
            (Fraction(-1) if i == 0 else Fraction(1)) if i == j else Fraction(0)
            for j in range(dim)
        )
        for i in range(dim)
    )


def bracket(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


# ---------------------------------------------------------------------------
# group elements
# ---------------------------------------------------------------------------


class LorentzElement:
    """Exact orthochronous Lorentz matrix with its ball-model action."""

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix: Matrix = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        self.dim = len(self.matrix)
        eta = eta_matrix(self.dim)
        if mat_mul(mat_mul(mat_transpose(self.matrix), eta), self.matrix) != eta:
            raise ValueError("matrix does not preserve eta")
        if self.matrix[0][0] <= 0:
            raise ValueError("matrix is not orthochronous")

    @property
    def n(self) -> int:
        return self.dim - 1

    def inverse(self) -> "LorentzElement":
        # A^{-1} = eta A^T eta for eta-orthogonal A
        eta = eta_matrix(self.dim)
        return LorentzElement(mat_mul(mat_mul(eta, mat_transpose(self.matrix)), eta))

    def __mul__(self, other: "LorentzElement") -> "LorentzElement":
        return LorentzElement(mat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, LorentzElement) and self.matrix == other.matrix

    def apply(self, v: Sequence) -> Tuple:
        return mat_vec(self.matrix, v)

    def __repr__(self):
        return f"LorentzElement(n={self.n})"


def identity_element(n: int) -> LorentzElement:
    return LorentzElement(mat_identity(n + 1))


def rational_boost(n: int, direction: int, c: Fraction, s: Fraction) -> LorentzElement:
    """Boost in the X^direction axis with cosh -> c, sinh -> s."""
    c, s = Fraction(c), Fraction(s)
    if c * c - s * s != 1 or c <= 0:
        raise ValueError("(c, s) must satisfy c^2 - s^2 = 1, c > 0")
    if not 1 <= direction <= n:
        raise ValueError("boost direction out of range")
    m = [[Fraction(1) if i == j else Fraction(0) for j in range(n + 1)] for i in range(n + 1)]
    m[0][0] = c
    m[0][direction] = s
    m[direction][0] = s
    m[direction][direction] = c
    return LorentzElement(m)


def rational_rotation(n: int, i: int, j: int, c: Fraction, s: Fraction) -> LorentzElement:
    """Rotation in the X^i X^j plane with cos -> c, sin -> s."""
    c, s = Fraction(c), Fraction(s)
    if c * c + s * s != 1:
        raise ValueError("(c, s) must satisfy c^2 + s^2 = 1")
    if not (1 <= i <= n and 1 <= j <= n and i != j):
        raise ValueError("rotation plane out of range")
    m = [[Fraction(1) if a == b else Fraction(0) for b in range(n + 1)] for a in range(n + 1)]
    m[i][i] = c
    m[i][j] = -s
    m[j][i] = s
    m[j][j] = c
    return LorentzElement(m)


def boost_from_parameter(n: int, direction: int, t: Fraction) -> LorentzElement:
    """Rational hyperbola point (c, s) = ((1+t^2)/(1-t^2), 2t/(1-t^2))."""
    t = Fraction(t)
    c = (1 + t * t) / (1 - t * t)
    s = 2 * t / (1 - t * t)
    return rational_boost(n, direction, c, s)


# ---------------------------------------------------------------------------
# ball model
# ---------------------------------------------------------------------------


def stereo_to_ball(y: Sequence) -> Tuple:
    """Projection from the hyperboloid to the unit ball, (X^0, X) -> X/(1+X^0)."""
    d = 1 + y[0]
    return tuple(v / d for v in y[1:])


def ball_to_hyperboloid(x: Sequence) -> Tuple:
    norm2 = sum((v * v for v in x), Fraction(0))
    d = 1 - norm2
    if d <= 0:
        raise ValueError("point not in the open unit ball")
    return ((1 + norm2) / d,) + tuple(2 * v / d for v in x)


def ball_action(a: LorentzElement, x: Sequence) -> Tuple:
    """Exact action of the isometry on a rational point of the ball."""
    y = ball_to_hyperboloid([Fraction(v) for v in x])
    out = stereo_to_ball(a.apply(y))
    if sum(v * v for v in out) >= 1:
        raise AssertionError("ball action left the unit ball; corrupt matrix")
    return out


def sphere_action(a: LorentzElement, xhat: Sequence) -> Tuple:
    """Boundary extension of the ball action at a point of S^{n-1}."""
    xhat = [Fraction(v) for v in xhat]
    if sum(v * v for v in xhat) != 1:
        raise ValueError("point not on the unit sphere")
    y = (Fraction(1),) + tuple(xhat)  # null ray through (1, x)
    w = a.apply(y)
    return tuple(v / w[0] for v in w[1:])


def u_of_A(a: LorentzElement, xhat: Sequence) -> Fraction:
    """Boundary conformal factor u[A](x) = 1 / X^0(A^{-1}(1, x))."""
    xhat = [Fraction(v) for v in xhat]
    if sum(v * v for v in xhat) != 1:
        raise ValueError("point not on the unit sphere")
    w = a.inverse().apply((Fraction(1),) + tuple(xhat))
    return 1 / w[0]


def rational_sphere_point(v: Sequence[Fraction]) -> Tuple:
    """Inverse stereographic image of a rational vector: a point of S^{n-1}.

    Maps v in R^{n-1} to ((2v, 1 - |v|^2)) / (1 + |v|^2).
    """
    v = [Fraction(t) for t in v]
    norm2 = sum((t * t for t in v), Fraction(0))
    d = 1 + norm2
    return tuple(2 * t / d for t in v) + ((1 - norm2) / d,)


# ---------------------------------------------------------------------------
# algebra elements and actions on polynomials
# ---------------------------------------------------------------------------


class AlgebraElement:
    """Infinitesimal isometry: (eta a)^T = -(eta a)."""

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix: Matrix = tuple(tuple(_exact_entry(v) for v in row) for row in matrix)
        self.dim = len(self.matrix)
        eta = eta_matrix(self.dim)
        ea = mat_mul(eta, self.matrix)
        if mat_transpose(ea) != mat_scale(ea, Fraction(-1)):
            raise ValueError("matrix is not an infinitesimal isometry")

    @property
    def n(self) -> int:
        return self.dim - 1

    def __repr__(self):
        return f"AlgebraElement(n={self.n})"


def _exact_entry(v):
    if isinstance(v, (Fraction, GaussianRational)):
        return v
    return Fraction(v)


def boost_generator(n: int, i: int) -> AlgebraElement:
    """a_i = dX^0 d_i + dX^i d_0."""
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    m[i][0] = Fraction(1)
    m[0][i] = Fraction(1)
    return AlgebraElement(m)


def rotation_generator(n: int, i: int, j: int) -> AlgebraElement:
    """r_ij = dX^i d_j - dX^j d_i."""
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    m[j][i] = Fraction(1)
    m[i][j] = Fraction(-1)
    return AlgebraElement(m)


def all_generators(n: int) -> List[Tuple[str, AlgebraElement]]:
    gens = [(f"a_{i}", boost_generator(n, i)) for i in range(1, n + 1)]
    gens += [
        (f"r_{i}{j}", rotation_generator(n, i, j))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]
    return gens


def act_on_poly(a: LorentzElement, p: ExactPoly) -> ExactPoly:
    """Group action P -> P o A^{-1} by exact substitution."""
    inv = a.inverse().matrix
    nv = p.nvars
    values = []
    for mu in range(nv):
        row = ExactPoly.zero(nv)
        for nu in range(nv):
            if inv[mu][nu]:
                row = row + inv[mu][nu] * ExactPoly.variable(nv, nu)
        values.append(row)
    return p.substitute(values)


def algebra_act_on_poly(a, p: ExactPoly) -> ExactPoly:
    """Algebra action a . P = -(a X)^mu d_mu P (matrices may be complex)."""
    m = a.matrix if isinstance(a, AlgebraElement) else a
    nv = p.nvars
    out = ExactPoly.zero(nv)
    for mu in range(nv):
        coeffs = m[mu]
        ax_mu = ExactPoly.zero(nv)
        for nu in range(nv):
            if coeffs[nu]:
                ax_mu = ax_mu + coeffs[nu] * ExactPoly.variable(nv, nu)
        if not ax_mu.is_zero():
            out = out - ax_mu * p.diff(mu)
    return out


def null_position_field(n: int) -> List[ExactPoly]:
    """Components of the null field (1, x^1, ..., x^n) along the sphere."""
    e = [ExactPoly.constant(n, 1)]
    e += [ExactPoly.variable(n, i) for i in range(n)]
    return e


# ---------------------------------------------------------------------------
# Cartan subalgebra, roots and highest-weight machinery
# ---------------------------------------------------------------------------

_I = GaussianRational.i()


def cartan_rank(n: int) -> int:
    return (n + 1) // 2


def cartan_keys(n: int) -> List[int]:
    """Index order of the eigenbasis: +1, -1, +2, -2, ..., (0 for odd)."""
    l = cartan_rank(n)
    keys: List[int] = []
    for k in range(1, l + 1):
        keys += [k, -k]
    if (n + 1) % 2 == 1:
        keys.append(0)
    return keys


def cartan_basis(n: int) -> Dict[int, Tuple]:
    """The eta-null eigenbasis e_{+-k} (and e_0 for odd ambient dimension).

    eta(e_i, e_j) = delta_{i,-j};  e_{+1} = -d_0 + d_1, e_{-1} = (d_0+d_1)/2,
    e_{+k} = d_{2k-2} + i d_{2k-1}, e_{-k} = (d_{2k-2} - i d_{2k-1})/2.
    """
    dim = n + 1
    l = cartan_rank(n)

    def unit(idx, coef):
        v = [GaussianRational(0)] * dim
        v[idx] = coef
        return v

    basis: Dict[int, Tuple] = {}
    e = unit(0, GaussianRational(-1))
    e[1] = GaussianRational(1)
    basis[1] = tuple(e)
    e = unit(0, GaussianRational(Fraction(1, 2)))
    e[1] = GaussianRational(Fraction(1, 2))
    basis[-1] = tuple(e)
    for k in range(2, l + 1):
        a, b = 2 * k - 2, 2 * k - 1
        e = unit(a, GaussianRational(1))
        e[b] = _I
        basis[k] = tuple(e)
        e = unit(a, GaussianRational(Fraction(1, 2)))
        e[b] = GaussianRational(0, Fraction(-1, 2))
        basis[-k] = tuple(e)
    if dim % 2 == 1:
        basis[0] = tuple(unit(dim - 1, GaussianRational(1)))
    return basis


def _basis_change(n: int) -> Tuple[Matrix, Matrix]:
    """(E, E^{-1}) where columns of E are the Cartan basis vectors."""
    keys = cartan_keys(n)
    basis = cartan_basis(n)
    dim = n + 1
    E = tuple(tuple(basis[k][row] for k in keys) for row in range(dim))
    # invert by solving E X = I exactly (small dense complex system)
    rows = [{j: E[i][j] for j in range(dim) if E[i][j]} for i in range(dim)]
    cols = []
    from .linalg import solve_min_support

    for j in range(dim):
        rhs = [GaussianRational(1) if i == j else GaussianRational(0) for i in range(dim)]
        sol = solve_min_support(rows, dim, rhs)
        cols.append([sol.get(i, GaussianRational(0)) for i in range(dim)])
    Einv = tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))
    return E, Einv


def cartan_generators(n: int) -> List[Matrix]:
    """Matrices H_k (standard basis) with eps_j(H_k) = delta_{jk}."""
    E, Einv = _basis_change(n)
    keys = cartan_keys(n)
    l = cartan_rank(n)
    dim = n + 1
    out = []
    for k in range(1, l + 1):
        d = [[GaussianRational(0)] * dim for _ in range(dim)]
        d[keys.index(k)][keys.index(k)] = GaussianRational(1)
        d[keys.index(-k)][keys.index(-k)] = GaussianRational(-1)
        out.append(mat_mul(mat_mul(E, tuple(map(tuple, d))), Einv))
    return out


def raising_operators(n: int) -> List[Tuple[str, Matrix]]:
    """Root vectors for all positive roots of so(n,1) complexified.

    The roots involving eps_1 are assembled from the south-pole
    translation combinations s_A = a_A + r_{1A}:

        X_{eps1 + epsk} = (s_{2k-2} + i s_{2k-1}) / 2
        X_{eps1 - epsk} = s_{2k-2} - i s_{2k-1}
        X_{eps1}        = s_n            (odd ambient dimension)

    (The +-/-- assignment is forced by this module's eps conventions and
    verified by the ad-eigenvalue tests; swapping the two labels, or any
    rescaling of a root vector, leaves every kernel computed from these
    operators unchanged.)  Roots not involving eps_1 use matrix units in
    the Cartan eigenbasis.
    """
    l = cartan_rank(n)
    dim = n + 1
    odd = dim % 2 == 1

    def s_matrix(A: int) -> Matrix:
        m = mat_add(boost_generator(n, A).matrix, rotation_generator(n, 1, A).matrix)
        return tuple(tuple(GaussianRational(v) for v in row) for row in m)

    ops: List[Tuple[str, Matrix]] = []
    for k in range(2, l + 1):
        s_even = s_matrix(2 * k - 2)
        s_odd = s_matrix(2 * k - 1)
        plus = mat_scale(mat_add(s_even, mat_scale(s_odd, _I)), GaussianRational(Fraction(1, 2)))
        minus = mat_add(s_even, mat_scale(s_odd, -_I))
        ops.append((f"e1-e{k}", minus))
        ops.append((f"e1+e{k}", plus))
    if odd:
        ops.append(("e1", s_matrix(n)))

    # remaining positive roots live inside so(n-1); matrix units E_{pq}
    # in the eigenbasis: X_{ea-eb} = E_ab - E_{-b,-a},
    # X_{ea+eb} = E_{a,-b} - E_{b,-a}, X_{ea} = E_{a,0} - E_{0,-a}
    E, Einv = _basis_change(n)
    keys = cartan_keys(n)

    def unit_mat(p: int, q: int) -> List[List[GaussianRational]]:
        m = [[GaussianRational(0)] * dim for _ in range(dim)]
        m[keys.index(p)][keys.index(q)] = GaussianRational(1)
        return m

    def to_std(m) -> Matrix:
        return mat_mul(mat_mul(E, tuple(map(tuple, m))), Einv)

    for a in range(2, l + 1):
        for b in range(a + 1, l + 1):
            m = unit_mat(a, b)
            m2 = unit_mat(-b, -a)
            ops.append((f"e{a}-e{b}", to_std(mat_sub(tuple(map(tuple, m)), tuple(map(tuple, m2))))))
            m = unit_mat(a, -b)
            m2 = unit_mat(b, -a)
            ops.append((f"e{a}+e{b}", to_std(mat_sub(tuple(map(tuple, m)), tuple(map(tuple, m2))))))
        if odd:
            m = unit_mat(a, 0)
            m2 = unit_mat(0, -a)
            ops.append((f"e{a}", to_std(mat_sub(tuple(map(tuple, m)), tuple(map(tuple, m2))))))
    return ops


def root_of_operator(name: str, rank: int) -> List[Fraction]:
    """Root in eps-coordinates from the operator's label."""
    out = [Fraction(0)] * rank
    body = name
    if "-" in body[1:]:
        a, b = body.split("-")
        out[int(a[1:]) - 1] = Fraction(1)
        out[int(b[1:]) - 1] = Fraction(-1)
    elif "+" in body:
        a, b = body.split("+")
        out[int(a[1:]) - 1] = Fraction(1)
        out[int(b[1:]) - 1] = Fraction(1)
    else:
        out[int(body[1:]) - 1] = Fraction(1)
    return out


def highest_weight_vectors(
    basis: Sequence[Row],
    apply_matrix,
    n: int,
    weight: Sequence[Fraction],
) -> List[Row]:
    """Joint kernel of all raising operators inside a weight space.

    ``basis`` spans an invariant subspace in some ambient coordinates;
    ``apply_matrix(mat, vec)`` realizes the action of an algebra matrix
    on such a coordinate vector.  Returns coefficient vectors against
    ``basis``.  Raises if the requested weight space is empty.
    """
    span = SpanSolver(list(basis))
    dim = len(basis)

    def op_rows(mat) -> List[Row]:
        cols = [span.coordinates(apply_matrix(mat, b)) for b in basis]
        rows: List[Row] = [dict() for _ in range(dim)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    stacked: List[Row] = []
    for hmat, lam in zip(cartan_generators(n), weight):
        rows = op_rows(hmat)
        if lam:
            for i in range(dim):
                v = rows[i].get(i, Fraction(0)) - lam
                if v:
                    rows[i][i] = v
                else:
                    rows[i].pop(i, None)
        stacked.extend(r for r in rows if r)
    if not nullspace(stacked, dim):
        raise ValueError("weight space empty")
    for _, rmat in raising_operators(n):
        stacked.extend(r for r in op_rows(rmat) if r)
    return nullspace(stacked, dim)
