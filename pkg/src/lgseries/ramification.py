"""Linear series on a single projective line over GF(p): vanishing and
ramification sequences, Hasse-derivative Wronskians, separability, tameness
certificates, and the expected-dimension count.

A degree-<=m series is a subspace of GF(p)^(m+1) whose coordinates are the
polynomial coefficients in ascending order.  Orders of vanishing at infinity
are m minus the degree.  Hasse derivatives D^(j) y^k = binom(k, j) y^(k-j)
replace ordinary derivatives so that everything stays correct in small
characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .fields import Fp, PrimeField, is_tame
from .linalg import Matrix, Subspace

INFINITY = "inf"


def _poly_trim(coeffs: tuple) -> tuple:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1].is_zero():
        n -= 1
    return coeffs[:n]


def poly_add(a: tuple, b: tuple, ring) -> tuple:
    n = max(len(a), len(b))
    z = ring.zero()
    return tuple((a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
                 for i in range(n))


def poly_mul(a: tuple, b: tuple, ring) -> tuple:
    if not a or not b:
        return ()
    z = ring.zero()
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def poly_scale(a: tuple, c) -> tuple:
    return tuple(c * x for x in a)


def poly_eval(a: tuple, t):
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * t + c
    return acc


def hasse_derivative(a: tuple, j: int, ring) -> tuple:
    """j-th Hasse derivative: coefficient k+j contributes binom(k+j, j)."""
    if j >= len(a):
        return ()
    return tuple(ring(comb(k + j, j)) * a[k + j] for k in range(len(a) - j))


def poly_order_at(a: tuple, t, ring, degree_bound: Optional[int] = None):
    """Order of vanishing at t (or at INFINITY with the given degree bound).

    Returns None for the zero polynomial.
    """
    a = _poly_trim(tuple(ring(x) for x in a))
    if not a:
        return None
    if t == INFINITY:
        if degree_bound is None:
            raise ValueError("order at infinity needs the degree bound")
        return degree_bound - (len(a) - 1)
    t = ring(t)
    for k in range(len(a)):
        if not poly_eval(hasse_derivative(a, k, ring), t).is_zero():
            return k
    raise AssertionError("nonzero polynomial with no finite order")


@dataclass
class RamificationData:
    point: object            # field value as int, or "inf"
    vanishing: tuple         # strictly increasing orders a_j
    ramification: tuple      # alpha_j = a_j - j
    tame: bool

    @property
    def weight(self) -> int:
        return sum(self.ramification)

    def as_dict(self) -> dict:
        return {"point": self.point, "vanishing": list(self.vanishing),
                "ramification": list(self.ramification), "tame": self.tame}


def _shift_basis_matrix(m: int, t: Fp, ring) -> Matrix:
    """Change of coordinates sending coefficients in y to coefficients in
    (y - t): row k of the result reads off the k-th Hasse coefficient at t."""
    rows = []
    for k in range(m + 1):
        rows.append([ring(comb(j, k)) * pow_elem(t, j - k, ring)
                     for j in range(m + 1)])
    return Matrix.from_rows(ring, rows)


def pow_elem(t: Fp, e: int, ring):
    if e < 0:
        return ring.zero()
    acc = ring.one()
    for _ in range(e):
        acc = acc * t
    return acc


def vanishing_sequence(v: Subspace, point, degree: Optional[int] = None) -> RamificationData:
    """Vanishing and ramification sequences of the series v at one point.

    The basis is rewritten in the order filtration at the point and
    re-echelonized; the pivot columns are exactly the distinct orders of
    vanishing realised by the subspace.
    """
    ring = v.ring
    if ring.dual:
        raise ValueError("vanishing_sequence needs field coefficients; "
                         "use vanishing_sequence_dual for dual-number probes")
    m = (v.ambient_dim - 1) if degree is None else degree
    if v.ambient_dim != m + 1:
        raise ValueError("subspace of degree-<=%d polynomials must sit in "
                         "dimension %d" % (m, m + 1))
    if v.dim == 0:
        raise ValueError("vanishing sequence of the zero series is undefined")
    if point == INFINITY:
        rows = [list(reversed(row)) for row in v.basis_rows()]
    else:
        t = ring(point)
        shift = _shift_basis_matrix(m, t, ring)
        rows = [shift.apply(row) for row in v.basis_rows()]
    filtered = Subspace.from_rows(ring, m + 1, rows)
    orders = filtered.pivots
    alpha = tuple(a - j for j, a in enumerate(orders))
    return RamificationData(point if point == INFINITY else ring(point).v,
                            tuple(orders), alpha, is_tame(orders, ring.p))


def wronskian(v: Subspace) -> tuple:
    """Determinant of the Hasse-derivative matrix of a basis, as a polynomial.

    Changing the basis scales the result by a nonzero constant, so the
    zero/nonzero verdict and all root orders are invariants of the series.
    """
    ring = v.ring
    if v.dim == 0:
        raise ValueError("Wronskian of the zero series is undefined")
    basis = [tuple(row) for row in v.basis_rows()]
    rp1 = len(basis)
    grid = [[_poly_trim(hasse_derivative(b, j, ring)) for b in basis]
            for j in range(rp1)]
    return _poly_det(grid, ring)


def _poly_det(grid, ring) -> tuple:
    n = len(grid)
    if n == 0:
        return (ring.one(),)
    if n == 1:
        return grid[0][0]
    acc = ()
    for j in range(n):
        minor = [[grid[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = poly_mul(grid[0][j], _poly_det(minor, ring), ring)
        if j % 2 == 1:
            term = poly_scale(term, -ring.one())
        acc = poly_add(acc, term, ring)
    return _poly_trim(acc)


def is_separable(v: Subspace) -> bool:
    """A series is separable when it is not everywhere ramified, i.e. its
    Wronskian does not vanish identically."""
    return len(wronskian(v)) > 0


@dataclass
class PluckerCertificate:
    genus: int
    degree: int
    r: int
    bound: int
    found_weight: int
    separable: bool
    all_inspected_tame: bool
    inspected: list          # point labels, in inspection order
    ramified: list           # RamificationData at the ramified inspected points

    def as_dict(self) -> dict:
        return {"schema_version": 1, "genus": self.genus, "degree": self.degree,
                "r": self.r, "bound": self.bound,
                "found_weight": self.found_weight, "separable": self.separable,
                "all_inspected_tame": self.all_inspected_tame,
                "inspected": list(self.inspected),
                "ramified": [rd.as_dict() for rd in self.ramified]}


def plucker_check(v: Subspace, degree: Optional[int] = None, genus: int = 0,
                  points: Optional[Sequence] = None) -> PluckerCertificate:
    """Total inspected ramification weight against (r+1)d + C(r+1,2)(2g-2).

    Inspect at least every rational point plus infinity (the default) to
    account for all ramification of a series whose Wronskian splits over the
    base field.  A separable series exceeding the bound is impossible; it is
    reported as a hard error rather than a certificate.
    """
    ring = v.ring
    m = (v.ambient_dim - 1) if degree is None else degree
    r = v.dim - 1
    if points is None:
        points = list(range(ring.p)) + [INFINITY]
    bound = (r + 1) * m + comb(r + 1, 2) * (2 * genus - 2)
    separable = is_separable(v)
    total = 0
    all_tame = True
    ramified = []
    for pt in points:
        data = vanishing_sequence(v, pt, degree=m)
        total += data.weight
        if not data.tame:
            all_tame = False
        if data.weight > 0:
            ramified.append(data)
    if separable and total > bound:
        raise RuntimeError(
            "separable series with inspected weight %d above the bound %d"
            % (total, bound))
    return PluckerCertificate(genus, m, r, bound, total, separable, all_tame,
                              [p if p == INFINITY else PrimeField(ring.p)(p).v
                               for p in points], ramified)


def rho(genus: int, r: int, d: int, alphas: Sequence[Sequence[int]] = ()) -> int:
    """Expected dimension (r+1)(d-r) - r*genus - sum of all ramification."""
    total = 0
    for alpha in alphas:
        alpha = list(alpha)
        if len(alpha) != r + 1:
            raise ValueError("ramification sequence must have length r+1")
        if any(a < 0 for a in alpha):
            raise ValueError("ramification sequence must be nonnegative")
        if any(x > y for x, y in zip(alpha, alpha[1:])):
            raise ValueError("ramification sequence must be non-decreasing")
        total += sum(alpha)
    return (r + 1) * (d - r) - r * genus - total
