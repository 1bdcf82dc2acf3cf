import random
from fractions import Fraction

import pytest

from ahmass.gaussian import GaussianRational
from ahmass.linalg import (
    Echelon,
    SpanSolver,
    dense_to_rows,
    matvec,
    nullspace,
    rank,
    signature_of_form,
    solve_min_support,
)


def test_nullspace_identity():
    rows = dense_to_rows([[1, 0], [0, 1]])
    assert nullspace(rows, 2) == []


def test_nullspace_zero_matrix():
    basis = nullspace([{}, {}], 2)
    assert len(basis) == 2


def test_nullspace_single_row():
    basis = nullspace(dense_to_rows([[1, 1]]), 2)
    assert len(basis) == 1
    v = basis[0]
    assert v[1] == 1 and v[0] == -1


def random_rows(rng, nrows, ncols, density=0.5):
    rows = []
    for _ in range(nrows):
        r = {}
        for c in range(ncols):
            if rng.random() < density:
                v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                if v:
                    r[c] = v
        rows.append(r)
    return rows


def test_nullspace_rank_property():
    rng = random.Random(7)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
        rows = random_rows(rng, nrows, ncols)
        basis = nullspace(rows, ncols)
        assert rank(rows, ncols) + len(basis) == ncols
        for v in basis:
            assert matvec(rows, v) == {}


def test_nullspace_gaussian_entries():
    i = GaussianRational.i()
    rows = [{0: GaussianRational(1), 1: i}]
    basis = nullspace(rows, 2)
    assert len(basis) == 1
    assert matvec(rows, basis[0]) == {}


def test_solve_min_support():
    rows = dense_to_rows([[1, 1, 0], [0, 1, 1]])
    x = solve_min_support(rows, 3, [Fraction(2), Fraction(1)])
    assert matvec(rows, x) == {0: 2, 1: 1}
    # free variable (column 2) pinned to zero
    assert 2 not in x


def test_solve_inconsistent():
    rows = dense_to_rows([[1, 0], [1, 0]])
    with pytest.raises(ValueError):
        solve_min_support(rows, 2, [Fraction(1), Fraction(2)])


def test_span_solver_roundtrip():
    rng = random.Random(3)
    vecs = [
        {0: Fraction(1), 2: Fraction(2)},
        {1: Fraction(1)},
        {0: Fraction(1), 3: Fraction(-1)},
    ]
    solver = SpanSolver(vecs)
    coeffs = [Fraction(5), Fraction(-2), Fraction(1, 3)]
    target = {}
    for c, v in zip(coeffs, vecs):
        for k, val in v.items():
            target[k] = target.get(k, Fraction(0)) + c * val
    target = {k: v for k, v in target.items() if v}
    got = solver.coordinates(target)
    assert got == {i: c for i, c in enumerate(coeffs) if c}
    assert not solver.contains({4: Fraction(1)})


def test_signature_diagonal():
    assert signature_of_form([[1, 0], [0, -1]]) == (1, 1, 0)
    assert signature_of_form([[2, 0, 0], [0, 3, 0], [0, 0, 0]]) == (2, 0, 1)


def test_signature_offdiagonal_block():
    # hyperbolic plane: eigenvalues +1, -1
    assert signature_of_form([[0, 1], [1, 0]]) == (1, 1, 0)


def test_signature_congruence_invariant():
    rng = random.Random(11)
    for _ in range(15):
        d = rng.randint(2, 5)
        diag = [rng.choice([-2, -1, 0, 1, 3]) for _ in range(d)]
        G = [[Fraction(diag[i]) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
        # random invertible S (unit upper triangular times permutation)
        S = [[Fraction(0)] * d for _ in range(d)]
        perm = list(range(d))
        rng.shuffle(perm)
        for i in range(d):
            S[i][perm[i]] = Fraction(1)
            for j in range(d):
                if rng.random() < 0.4 and perm[i] < j:
                    S[i][j] += Fraction(rng.randint(-3, 3))
        StGS = [[sum(S[k][i] * G[k][l] * S[l][j] for k in range(d) for l in range(d))
                 for j in range(d)] for i in range(d)]
        expected = (
            sum(1 for v in diag if v > 0),
            sum(1 for v in diag if v < 0),
            sum(1 for v in diag if v == 0),
        )
        assert signature_of_form(StGS) == expected


def test_echelon_deterministic_free_columns():
    rows = dense_to_rows([[1, 2, 3], [2, 4, 6]])
    ech = Echelon(rows, 3)
    assert ech.pivot_cols == [0]
    assert ech.free_columns() == [1, 2]
