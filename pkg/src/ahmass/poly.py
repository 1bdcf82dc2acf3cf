"""Exact multivariate polynomials and the two quadric reductions.

``ExactPoly`` stores a sparse map from exponent tuples to coefficients
(``Fraction`` or :class:`~ahmass.gaussian.GaussianRational`).  Two variable
conventions are used throughout the package:

* ambient Minkowski polynomials in ``n + 1`` variables ``X^0 .. X^n``
  (index 0 is the timelike one), and
* Euclidean polynomials in ``n`` variables ``x^1 .. x^n`` restricted to
  the unit sphere.

The module supplies the wave operator, normalized sphere integration
(every value is relative to the sphere volume, hence rational), identity
testing on the sphere, and reduction modulo the unit-hyperboloid quadric
``1 + X^mu X_mu``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .gaussian import GaussianRational, conj, imag_part, real_part

Exponents = Tuple[int, ...]

_ZERO = Fraction(0)


def _is_zero(c) -> bool:
    return not c


class ExactPoly:
    """Sparse polynomial with exact rational or Gaussian-rational terms."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponents, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exponents, object] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent vector {e} has wrong length")
                if not _is_zero(c):
                    self.terms[tuple(e)] = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "ExactPoly":
        return ExactPoly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "ExactPoly":
        if isinstance(c, int):
            c = Fraction(c)
        return ExactPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, index: int) -> "ExactPoly":
        e = [0] * nvars
        e[index] = 1
        return ExactPoly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exponents: Sequence[int], c=Fraction(1)) -> "ExactPoly":
        if isinstance(c, int):
            c = Fraction(c)
        return ExactPoly(nvars, {tuple(exponents): c})

    # -- ring operations ----------------------------------------------

    def _check(self, other: "ExactPoly"):
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ExactPoly.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, _ZERO) + c
            if _is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        out = ExactPoly(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ExactPoly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ExactPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            if _is_zero(other):
                return ExactPoly(self.nvars)
            out = ExactPoly(self.nvars)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        self._check(other)
        prod: Dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = prod.get(e, _ZERO) + c1 * c2
                if _is_zero(s):
                    prod.pop(e, None)
                else:
                    prod[e] = s
        out = ExactPoly(self.nvars)
        out.terms = prod
        return out

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        out = ExactPoly(self.nvars)
        out.terms = {e: c / scalar for e, c in self.terms.items()}
        return out

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = ExactPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ExactPoly.constant(self.nvars, other)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.nvars == other.nvars and (self - other).is_zero()

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- calculus ------------------------------------------------------

    def diff(self, index: int) -> "ExactPoly":
        terms: Dict[Exponents, object] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            e2 = list(e)
            e2[index] = k - 1
            key = tuple(e2)
            s = terms.get(key, _ZERO) + c * k
            if _is_zero(s):
                terms.pop(key, None)
            else:
                terms[key] = s
        out = ExactPoly(self.nvars)
        out.terms = terms
        return out

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, d: int) -> "ExactPoly":
        out = ExactPoly(self.nvars)
        out.terms = {e: c for e, c in self.terms.items() if sum(e) == d}
        return out

    def substitute(self, values: Sequence["ExactPoly"]) -> "ExactPoly":
        """Plug a polynomial in for every variable.

        ``values[i]`` replaces variable ``i``; all must share one variable
        count, which becomes the variable count of the result.
        """
        nv = values[0].nvars
        result = ExactPoly(nv)
        cache: Dict[Tuple[int, int], ExactPoly] = {}

        def power(i: int, k: int) -> ExactPoly:
            key = (i, k)
            if key not in cache:
                cache[key] = values[i] ** k
            return cache[key]

        for e, c in self.terms.items():
            term = ExactPoly.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> object:
        """Exact evaluation at a point of scalars (Fraction/Gaussian)."""
        total = _ZERO
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * point[i] ** k
            total = total + v
        return total

    def evaluate_float(self, point) -> complex | float:
        total = 0.0 + 0.0j
        for e, c in self.terms.items():
            v = 1.0
            for i, k in enumerate(e):
                if k:
                    v *= point[i] ** k
            total += complex(c) * v
        if abs(total.imag) == 0.0:
            return total.real
        return total

    # -- structure helpers ----------------------------------------------

    def conjugate(self) -> "ExactPoly":
        out = ExactPoly(self.nvars)
        out.terms = {e: conj(c) for e, c in self.terms.items()}
        return out

    def real(self) -> "ExactPoly":
        out = ExactPoly(self.nvars)
        out.terms = {
            e: r for e, c in self.terms.items() if (r := real_part(c)) != 0
        }
        return out

    def imag(self) -> "ExactPoly":
        out = ExactPoly(self.nvars)
        out.terms = {
            e: r for e, c in self.terms.items() if (r := imag_part(c)) != 0
        }
        return out

    def map_coefficients(self, fn) -> "ExactPoly":
        out = ExactPoly(self.nvars)
        for e, c in self.terms.items():
            v = fn(c)
            if not _is_zero(v):
                out.terms[e] = v
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"v{i}^{k}" if k > 1 else f"v{i}" for i, k in enumerate(e) if k
            )
            parts.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Minkowski-side operators
# ---------------------------------------------------------------------------


def wave_operator(p: ExactPoly) -> ExactPoly:
    """Apply -d0^2 + d1^2 + ... + dn^2 (ambient Minkowski variables)."""
    if p.nvars < 2:
        raise ValueError("variable-count mismatch: need at least 2 Minkowski variables")
    out = -p.diff(0).diff(0)
    for i in range(1, p.nvars):
        out = out + p.diff(i).diff(i)
    return out


def minkowski_norm_poly(nvars: int) -> ExactPoly:
    """The quadric X^mu X_mu = -(X^0)^2 + sum_i (X^i)^2."""
    terms: Dict[Exponents, object] = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 2
        terms[tuple(e)] = Fraction(-1) if i == 0 else Fraction(1)
    return ExactPoly(nvars, terms)


def euler_degree(p: ExactPoly) -> ExactPoly:
    """The Euler operator X^mu d_mu P (equals deg * P on homogeneous P)."""
    out = ExactPoly(p.nvars)
    for i in range(p.nvars):
        out = out + ExactPoly.variable(p.nvars, i) * p.diff(i)
    return out


def hyperboloid_normal_form(p: ExactPoly) -> ExactPoly:
    """Reduce modulo 1 + X^mu X_mu by substituting (X^0)^2 -> 1 + |vec X|^2.

    The result has degree at most 1 in X^0 and is congruent to the input
    modulo the hyperboloid ideal.  The reduction is idempotent.
    """
    nv = p.nvars
    spatial = ExactPoly.constant(nv, 1)
    for i in range(1, nv):
        spatial = spatial + ExactPoly.variable(nv, i) ** 2
    pow_cache: Dict[int, ExactPoly] = {0: ExactPoly.constant(nv, 1)}

    def spatial_pow(k: int) -> ExactPoly:
        if k not in pow_cache:
            pow_cache[k] = spatial_pow(k - 1) * spatial
        return pow_cache[k]

    out = ExactPoly(nv)
    x0 = ExactPoly.variable(nv, 0)
    for e, c in p.terms.items():
        k0 = e[0]
        rest = list(e)
        rest[0] = k0 % 2
        term = ExactPoly.monomial(nv, tuple(rest), c)
        if k0 >= 2:
            term = term * spatial_pow(k0 // 2)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Sphere integration (values relative to Vol(S^{n-1}))
# ---------------------------------------------------------------------------


def sphere_monomial_integral(exponents: Sequence[int]) -> Fraction:
    """Normalized integral of x^alpha over the unit sphere S^{n-1}.

    Zero unless every exponent is even; otherwise the classical closed
    form prod (a_i - 1)!! / (n (n+2) ... (n + |a| - 2)).
    """
    n = len(exponents)
    if n < 1:
        raise ValueError("need at least one variable")
    if any(a < 0 for a in exponents):
        raise ValueError("negative exponent")
    if any(a % 2 for a in exponents):
        return Fraction(0)
    total = sum(exponents)
    num = 1
    for a in exponents:
        for j in range(a - 1, 0, -2):
            num *= j
    den = 1
    for j in range(0, total, 2):
        den *= n + j
    return Fraction(num, den)


def sphere_integral(p: ExactPoly):
    """Linear extension of the monomial integral; exact, normalized."""
    total = _ZERO
    for e, c in p.terms.items():
        w = sphere_monomial_integral(e)
        if w:
            total = total + c * w
    return total


def vanishes_on_sphere(p: ExactPoly) -> bool:
    """True iff the polynomial is identically zero on the unit sphere.

    Uses the integral of the squared modulus: a continuous function with
    zero mean square vanishes.  Gaussian-rational input is handled by
    testing real and imaginary parts separately.
    """
    re, im = p.real(), p.imag()
    for q in (re, im):
        if q.terms and sphere_integral(q * q) != 0:
            return False
    return True


def sphere_restrict(p: ExactPoly) -> ExactPoly:
    """Evaluate a Minkowski polynomial at (1, x^1 .. x^n).

    The result is Euclidean, in one fewer variable.
    """
    nv = p.nvars - 1
    values = [ExactPoly.constant(nv, 1)] + [
        ExactPoly.variable(nv, i) for i in range(nv)
    ]
    return p.substitute(values)


# ---------------------------------------------------------------------------
# Monomial bases
# ---------------------------------------------------------------------------


def monomials_of_degree(nvars: int, degree: int) -> list[Exponents]:
    """All exponent tuples of the given total degree, lexicographic."""
    if degree < 0:
        return []
    out: list[Exponents] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], degree, nvars)
    return out


def monomial_index(nvars: int, degree: int) -> Dict[Exponents, int]:
    return {e: i for i, e in enumerate(monomials_of_degree(nvars, degree))}
