"""Canonical exact linear algebra over GF(p) and GF(p)[eps]/(eps^2).

Matrices act on column vectors; vectors are plain tuples of ring elements.
Subspaces are stored by their reduced row-echelon basis, which is the unique
canonical representative, so subspace equality, hashing and set-level
deduplication are exact.  Everything is immutable and side-effect free; the
subspace stream partitions deterministically by pivot pattern so exhaustive
searches can fan out without shared state.

Over the dual numbers, echelonization pivots on unit entries only.  A matrix
whose nonzero rows cannot all be led by a unit pivot in the standard column
order is flagged (``unit_pivots=False``) rather than rejected; rank counts
unit pivots.  Rank conditions that must hold on the whole ring (not just at
the closed point) go through ``rank_everywhere_at_most``, which tests minors,
because echelon ranks are unreliable over a non-domain.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional, Sequence

from .fields import Dual, DualNumbers, Fp, PrimeField, ring_from_dict


class BudgetError(RuntimeError):
    """An enumeration would examine more candidates than the budget allows."""

    def __init__(self, message: str, count: Optional[int] = None):
        super().__init__(message)
        self.count = count


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows: int, cols: int, entries: tuple):
        if len(entries) != rows * cols:
            raise ValueError("entry count %d does not match %dx%d"
                             % (len(entries), rows, cols))
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ents = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            ents.extend(ring(x) if not _is_element(x, ring) else x for x in row)
        return cls(ring, nrows, ncols, tuple(ents))

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n,
                   tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, ring, rows: int, cols: int) -> "Matrix":
        z = ring.zero()
        return cls(ring, rows, cols, (z,) * (rows * cols))

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows,
                      tuple(self.entry(i, j)
                            for j in range(self.cols) for i in range(self.rows)))

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows or self.ring != other.ring:
            raise ValueError("shape/ring mismatch in matrix product")
        ents = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = self.ring.zero()
                for k in range(self.cols):
                    acc = acc + ri[k] * other.entry(k, j)
                ents.append(acc)
        return Matrix(self.ring, self.rows, other.cols, tuple(ents))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in matrix sum")
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in matrix difference")
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(c * x for x in self.entries))

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product m @ v with v a length-`cols` vector."""
        if len(v) != self.cols:
            raise ValueError("vector length %d does not match cols %d"
                             % (len(v), self.cols))
        out = []
        for i in range(self.rows):
            acc = self.ring.zero()
            ri = self.row(i)
            for k in range(self.cols):
                acc = acc + ri[k] * v[k]
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        ents = tuple(self.entry(i, j) for i in rows for j in cols)
        return Matrix(self.ring, len(rows), len(cols), ents)

    def det(self):
        """Determinant over the coefficient ring (works over dual numbers).

        Laplace expansion with bitmask memoisation; fine for the small sizes
        this engine ever sees.
        """
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.ring.one()
        # dp maps a frozen column mask to the determinant of the submatrix on
        # rows 0..k-1 and the columns in the mask (k = popcount of the mask).
        dp = {0: self.ring.one()}
        for _ in range(n):
            ndp = {}
            for mask, val in dp.items():
                k = bin(mask).count("1")
                for j in range(n):
                    bit = 1 << j
                    if mask & bit:
                        continue
                    used_before = bin(mask & (bit - 1)).count("1")
                    term = val * self.entry(k, j)
                    # cofactor sign of position (k, used_before) in the
                    # growing (k+1)x(k+1) corner
                    if (k + used_before) % 2 == 1:
                        term = -term
                    nm = mask | bit
                    if nm in ndp:
                        ndp[nm] = ndp[nm] + term
                    else:
                        ndp[nm] = term
            dp = ndp
        return dp[(1 << n) - 1]

    def to_dual(self) -> "Matrix":
        """Reinterpret a GF(p) matrix over GF(p)[eps]/(eps^2)."""
        if self.ring.dual:
            return self
        ring = DualNumbers(self.ring.p)
        return Matrix(ring, self.rows, self.cols,
                      tuple(Dual(x.v, 0, self.ring.p) for x in self.entries))

    def mod_eps(self) -> "Matrix":
        """Reduce a dual-number matrix modulo eps."""
        if not self.ring.dual:
            return self
        ring = PrimeField(self.ring.p)
        return Matrix(ring, self.rows, self.cols,
                      tuple(Fp(x.a0, self.ring.p) for x in self.entries))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self.entries) == \
               (other.ring, other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __repr__(self):
        return "Matrix(%r, %s)" % (self.ring,
                                   [[_entry_repr(x) for x in self.row(i)]
                                    for i in range(self.rows)])

    def as_dict(self) -> dict:
        return {"ring": self.ring.as_dict(), "rows": self.rows, "cols": self.cols,
                "entries": [_entry_json(x) for x in self.entries]}

    @classmethod
    def from_dict(cls, d: dict) -> "Matrix":
        ring = ring_from_dict(d["ring"])
        ents = tuple(_entry_from_json(ring, e) for e in d["entries"])
        return cls(ring, d["rows"], d["cols"], ents)


def _is_element(x, ring) -> bool:
    return isinstance(x, Dual) if ring.dual else isinstance(x, Fp)


def _entry_repr(x) -> str:
    if isinstance(x, Dual):
        return "%d+%de" % (x.a0, x.a1)
    return str(x.v)


def _entry_json(x):
    return [x.a0, x.a1] if isinstance(x, Dual) else x.v


def _entry_from_json(ring, e):
    return ring(e[0], e[1]) if ring.dual else ring(e)


class Echelon(NamedTuple):
    matrix: Matrix          # canonical form, zero rows dropped
    rank: int               # number of unit pivots
    pivots: tuple           # pivot column per unit-pivot row
    unit_pivots: bool       # every surviving row is led by its unit pivot


def rref(m: Matrix) -> Echelon:
    """Reduced row-echelon form with unit pivots, canonical over both rings.

    Over a field this is the classical unique RREF.  Over the dual numbers
    pivots are chosen among unit entries in leftmost column order; rows with
    no unit entry (eps-torsion rows) are normalised separately and appended
    after the pivot rows, and the result is flagged ``unit_pivots=False``
    whenever some nonzero row's leading entry is not its unit pivot.
    """
    ring = m.ring
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    pivot_rows = 0
    for col in range(m.cols):
        sel = None
        for i in range(pivot_rows, len(work)):
            if work[i][col].is_unit():
                sel = i
                break
        if sel is None:
            continue
        work[pivot_rows], work[sel] = work[sel], work[pivot_rows]
        inv = work[pivot_rows][col].inverse()
        work[pivot_rows] = [inv * x for x in work[pivot_rows]]
        for i in range(len(work)):
            if i != pivot_rows and not work[i][col].is_zero():
                c = work[i][col]
                work[i] = [a - c * b for a, b in zip(work[i], work[pivot_rows])]
        pivots.append(col)
        pivot_rows += 1
    rank = pivot_rows
    rows = work[:rank]
    leftovers = [r for r in work[rank:] if not all(x.is_zero() for x in r)]
    unit_ok = True
    if leftovers:
        # Only reachable over the dual numbers: each leftover entry is a
        # multiple of eps.  Canonicalise by echelonizing the eps-parts.
        unit_ok = False
        eps_rows = [[Fp(x.a1, ring.p) for x in r] for r in leftovers]
        sub = rref(Matrix.from_rows(PrimeField(ring.p), eps_rows))
        for i in range(sub.matrix.rows):
            rows.append([Dual(0, x.v, ring.p) for x in sub.matrix.row(i)])
    for r, pc in zip(rows[:rank], pivots):
        lead = next(j for j, x in enumerate(r) if not x.is_zero())
        if lead != pc:
            unit_ok = False
            break
    flat = tuple(x for r in rows for x in r)
    return Echelon(Matrix(ring, len(rows), m.cols, flat), rank, tuple(pivots), unit_ok)


class Subspace:
    """A subspace of ring^d held by its canonical echelon basis.

    Two subspaces are equal iff their canonical bases agree entrywise.  Over
    the dual numbers a Subspace tracks ``unit_pivots`` (the echelon form has
    unit leading entries in standard column order) and exposes
    ``is_free_cofree`` (basis rows stay independent after setting eps = 0),
    which is the condition for being an honest rank-r sub-bundle.
    """

    __slots__ = ("ring", "ambient_dim", "basis", "pivots", "unit_pivots")

    def __init__(self, ring, ambient_dim: int, basis: Matrix, pivots: tuple,
                 unit_pivots: bool):
        self.ring = ring
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self.unit_pivots = unit_pivots

    @classmethod
    def from_rows(cls, ring, ambient_dim: int, rows: Sequence[Sequence]) -> "Subspace":
        if not rows:
            return cls.zero_space(ring, ambient_dim)
        m = Matrix.from_rows(ring, rows)
        if m.cols != ambient_dim:
            raise ValueError("row length %d does not match ambient %d"
                             % (m.cols, ambient_dim))
        ech = rref(m)
        return cls(ring, ambient_dim, ech.matrix, ech.pivots, ech.unit_pivots)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        ech = rref(m)
        return cls(m.ring, m.cols, ech.matrix, ech.pivots, ech.unit_pivots)

    @classmethod
    def zero_space(cls, ring, ambient_dim: int) -> "Subspace":
        return cls(ring, ambient_dim, Matrix(ring, 0, ambient_dim, ()), (), True)

    @classmethod
    def full_space(cls, ring, ambient_dim: int) -> "Subspace":
        return cls.from_matrix(Matrix.identity(ring, ambient_dim))

    @classmethod
    def _from_canonical(cls, ring, ambient_dim: int, rows: list, pivots: tuple) -> "Subspace":
        # trusted constructor for rows already in canonical echelon form
        flat = tuple(x for r in rows for x in r)
        return cls(ring, ambient_dim, Matrix(ring, len(rows), ambient_dim, flat),
                   pivots, True)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def is_free_cofree(self) -> bool:
        """Basis rows stay independent mod eps (trivially true over a field)."""
        if not self.ring.dual:
            return True
        red = rref(self.basis.mod_eps())
        return red.rank == self.basis.rows

    def basis_rows(self) -> list:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def contains_vector(self, v: Sequence) -> bool:
        """Membership test by reduction against the canonical basis.

        Coefficients are forced by the pivot coordinates (pivot columns are
        cleared in every other basis row), so the reduction is sound over
        both coefficient rings.
        """
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        v = [x if _is_element(x, self.ring) else self.ring(x) for x in v]
        for i, pc in enumerate(self.pivots):
            c = v[pc]
            if not c.is_zero():
                row = self.basis.row(i)
                v = [a - c * b for a, b in zip(v, row)]
        # reduce any eps-torsion remainder against the torsion rows
        for i in range(len(self.pivots), self.basis.rows):
            row = self.basis.row(i)
            lead = next(j for j, x in enumerate(row) if not x.is_zero())
            c = v[lead]
            if c.is_zero():
                continue
            if c.a0 != 0:
                return False  # a torsion row can only cancel eps-multiples
            coeff = Dual(c.a1 * pow(row[lead].a1, -1, self.ring.p), 0, self.ring.p)
            v = [a - coeff * b for a, b in zip(v, row)]
        return all(x.is_zero() for x in v)

    def contains(self, other: "Subspace") -> bool:
        """True when ``other`` is a subspace of ``self``."""
        if other.ambient_dim != self.ambient_dim or other.ring != self.ring:
            raise ValueError("ambient mismatch in containment test")
        return all(self.contains_vector(r) for r in other.basis_rows())

    def sum(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        rows = self.basis_rows() + other.basis_rows()
        if not rows:
            return Subspace.zero_space(self.ring, self.ambient_dim)
        return Subspace.from_rows(self.ring, self.ambient_dim, rows)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked dual constraints."""
        _check_ambient(self, other)
        cons = self.constraints().row_list() + other.constraints().row_list()
        if not cons:
            return Subspace.full_space(self.ring, self.ambient_dim)
        return kernel(Matrix.from_rows(self.ring, cons))

    __and__ = intersect

    def constraints(self) -> Matrix:
        """A matrix whose kernel is exactly this subspace (field rings only)."""
        if self.dim == 0:
            return Matrix.identity(self.ring, self.ambient_dim)
        ann = kernel(self.basis)  # annihilator under the standard dot product
        return ann.basis

    def mod_eps(self) -> "Subspace":
        return Subspace.from_matrix(self.basis.mod_eps())

    def to_dual(self) -> "Subspace":
        return Subspace.from_matrix(self.basis.to_dual())

    def key(self) -> tuple:
        return (self.ambient_dim,) + tuple(_entry_json_t(x) for x in self.basis.entries)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ring == other.ring and self.ambient_dim == other.ambient_dim
                and self.basis.entries == other.basis.entries)

    def __hash__(self):
        return hash((self.ring, self.ambient_dim, self.basis.entries))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d, basis=%s)" % (
            self.dim, self.ambient_dim,
            [[_entry_repr(x) for x in self.basis.row(i)]
             for i in range(self.basis.rows)])

    def as_dict(self) -> dict:
        return {"ring": self.ring.as_dict(), "ambient_dim": self.ambient_dim,
                "rank": self.dim,
                "basis": [[_entry_json(x) for x in self.basis.row(i)]
                          for i in range(self.basis.rows)]}

    @classmethod
    def from_dict(cls, d: dict) -> "Subspace":
        ring = ring_from_dict(d["ring"])
        return cls.from_rows(ring, d["ambient_dim"],
                             [[_entry_from_json(ring, e) for e in row]
                              for row in d["basis"]])


def _entry_json_t(x):
    return (x.a0, x.a1) if isinstance(x, Dual) else x.v


def _check_ambient(u: Subspace, w: Subspace) -> None:
    if u.ambient_dim != w.ambient_dim or u.ring != w.ring:
        raise ValueError("ambient dimension or ring mismatch")


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a canonical Subspace (field coefficients)."""
    if m.ring.dual:
        raise ValueError("kernel computation requires field coefficients")
    ech = rref(m)
    pivots = set(ech.pivots)
    free_cols = [c for c in range(m.cols) if c not in pivots]
    rows = []
    zero, one = m.ring.zero(), m.ring.one()
    for fc in free_cols:
        v = [zero] * m.cols
        v[fc] = one
        for i, pc in enumerate(ech.pivots):
            v[pc] = -ech.matrix.entry(i, fc)
        rows.append(v)
    if not rows:
        return Subspace.zero_space(m.ring, m.cols)
    return Subspace.from_rows(m.ring, m.cols, rows)


def image(m: Matrix) -> Subspace:
    """Column space of m, i.e. the image of v -> m v."""
    cols = [m.column(j) for j in range(m.cols)]
    if not cols:
        return Subspace.zero_space(m.ring, m.rows)
    return Subspace.from_rows(m.ring, m.rows, cols)


def apply_map(m: Matrix, u: Subspace) -> Subspace:
    """Image of the subspace u under the linear map m."""
    if m.cols != u.ambient_dim:
        raise ValueError("map domain %d does not match ambient %d"
                         % (m.cols, u.ambient_dim))
    if u.dim == 0:
        return Subspace.zero_space(m.ring, m.rows)
    return Subspace.from_rows(m.ring, m.rows, [m.apply(r) for r in u.basis_rows()])


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """{v : m v in w}, computed as the kernel of (constraints of w) o m."""
    if m.rows != w.ambient_dim:
        raise ValueError("map codomain %d does not match ambient %d"
                         % (m.rows, w.ambient_dim))
    cons = w.constraints()
    if cons.rows == 0:
        return Subspace.full_space(m.ring, m.cols)
    return kernel(cons * m)


def sum_spaces(u: Subspace, w: Subspace) -> Subspace:
    return u.sum(w)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    return u.intersect(w)


def contains(u: Subspace, w: Subspace) -> bool:
    return u.contains(w)


def solve(m: Matrix, v: Sequence):
    """One solution x of m x = v over a field, or None if inconsistent."""
    if m.ring.dual:
        raise ValueError("solve requires field coefficients")
    if m.rows == 0:
        return (m.ring.zero(),) * m.cols
    aug = Matrix.from_rows(m.ring,
                           [list(m.row(i)) + [m.ring(v[i])] for i in range(m.rows)])
    ech = rref(aug)
    zero = m.ring.zero()
    x = [zero] * m.cols
    for i, pc in enumerate(ech.pivots):
        if pc == m.cols:
            return None  # pivot in the augmented column: inconsistent
        x[pc] = ech.matrix.entry(i, m.cols)
    return tuple(x)


def coords_in_rows(rows: Sequence[Sequence], v: Sequence, ring):
    """Coefficients expressing v as a combination of the given rows, or None."""
    if not rows:
        return () if all(ring(x).is_zero() for x in v) else None
    m = Matrix.from_rows(ring, rows).transpose()
    return solve(m, [ring(x) for x in v])


def gaussian_binomial(d: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^d."""
    if r < 0 or r > d:
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count_by_pivots(d: int, r: int, q: int, pivots: Sequence[int]) -> int:
    return q ** _free_position_count(d, pivots)


def _free_position_count(d: int, pivots: Sequence[int]) -> int:
    pset = set(pivots)
    return sum(1 for i, pc in enumerate(pivots)
               for c in range(pc + 1, d) if c not in pset)


def pivot_patterns(d: int, r: int) -> Iterator[tuple]:
    """All echelon pivot-column patterns in lexicographic order."""
    from itertools import combinations

    return combinations(range(d), r)


def enumerate_subspaces(d: int, r: int, q: int, budget: Optional[int] = None,
                        pivots: Optional[tuple] = None) -> Iterator[Subspace]:
    """Yield every r-dimensional subspace of GF(q)^d exactly once.

    Deterministic order: pivot patterns lexicographically, then free entries
    lexicographically (row-major positions, last position varying fastest).
    Restricting ``pivots`` to one pattern yields a single echelon cell, which
    is how exhaustive searches are partitioned across workers.
    """
    from itertools import product

    if r < 0 or r > d:
        raise ValueError("need 0 <= r <= d, got r=%d d=%d" % (r, d))
    ring = PrimeField(q)
    if budget is not None:
        total = (gaussian_binomial(d, r, q) if pivots is None
                 else subspace_count_by_pivots(d, r, q, pivots))
        if total > budget:
            raise BudgetError(
                "enumeration of %d subspaces exceeds budget %d" % (total, budget),
                count=total)
    patterns = [tuple(pivots)] if pivots is not None else list(pivot_patterns(d, r))
    zero, one = ring.zero(), ring.one()
    for pat in patterns:
        pset = set(pat)
        free_pos = [(i, c) for i, pc in enumerate(pat)
                    for c in range(pc + 1, d) if c not in pset]
        for values in product(range(q), repeat=len(free_pos)):
            rows = [[zero] * d for _ in range(r)]
            for i, pc in enumerate(pat):
                rows[i][pc] = one
            for (i, c), val in zip(free_pos, values):
                rows[i][c] = Fp(val, q)
            yield Subspace._from_canonical(ring, d, rows, pat)


def enumerate_between(lower: Subspace, upper: Subspace, r: int) -> Iterator[Subspace]:
    """All r-dimensional subspaces V with lower <= V <= upper, each once.

    Works in quotient coordinates of upper/lower so candidates are generated,
    never filtered.  Deterministic order inherited from enumerate_subspaces.
    """
    _check_ambient(lower, upper)
    a, b = lower.dim, upper.dim
    if r < a or r > b:
        return
    ring = lower.ring
    q = ring.p
    upper_rows = upper.basis_rows()
    # lower in coordinates of upper's basis
    lower_coords = []
    for row in lower.basis_rows():
        c = coords_in_rows(upper_rows, row, ring)
        if c is None:
            raise ValueError("lower is not contained in upper")
        lower_coords.append(list(c))
    if lower_coords:
        lech = rref(Matrix.from_rows(ring, lower_coords))
        lpiv = set(lech.pivots)
    else:
        lpiv = set()
    non_piv = [c for c in range(b) if c not in lpiv]
    lower_rows = lower.basis_rows()
    for w in enumerate_subspaces(len(non_piv), r - a, q):
        rows = list(lower_rows)
        for wrow in w.basis_rows():
            # lift through the complement coordinates, then back to ambient
            vec = [ring.zero()] * b
            for coeff, c in zip(wrow, non_piv):
                vec[c] = coeff
            amb = [ring.zero()] * lower.ambient_dim
            for coeff, urow in zip(vec, upper_rows):
                if not coeff.is_zero():
                    amb = [x + coeff * y for x, y in zip(amb, urow)]
            rows.append(amb)
        yield Subspace.from_rows(ring, lower.ambient_dim, rows)


def rank_everywhere_at_most(m: Matrix, j: int) -> bool:
    """True iff every (j+1)-minor of m vanishes identically in the ring.

    Over the dual numbers this is the scheme-wide rank bound: a minor equal
    to eps is *not* zero, even though it vanishes at the closed point.
    """
    from itertools import combinations

    if j < 0:
        raise ValueError("rank bound must be nonnegative, got %d" % j)
    k = j + 1
    if k > min(m.rows, m.cols):
        return True
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            if not m.submatrix(rows, cols).det().is_zero():
                return False
    return True
