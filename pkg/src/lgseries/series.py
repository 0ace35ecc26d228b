"""Limit linear series on a two-component rational nodal curve.

The curve is two projective lines glued at one node, with affine coordinates
y and z vanishing at the node.  The level-i section space is

    E_i = {(a(y), b(z)) : deg a <= d-i, deg b <= i, a(0) = b(0)},

of dimension d+1, with coordinates (node value, a_1..a_{d-i}, b_1..b_i).
The forward map multiplies the z-side by z and kills the y-side; the
backward map multiplies the y-side by y and kills the z-side.  These satisfy
the linked-chain axioms with s = 0, and a degree-d series of projective
dimension r is a linked point with subspaces of dimension r+1.

Everything is exact, over GF(p) for enumeration and over GF(p)[eps]/(eps^2)
for first-order probes of the node vanishing orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .chains import ChainPoint, LinkedChain, enumerate_points
from .fields import DualNumbers, PrimeField
from .linalg import (Matrix, Subspace, apply_map, enumerate_subspaces,
                     intersect, preimage, rank_everywhere_at_most)
from .ramification import INFINITY, vanishing_sequence


class NodalModel:
    """Coordinate bookkeeping for the section spaces of the nodal curve."""

    __slots__ = ("d", "field")

    def __init__(self, d: int, p: int):
        if d < 1:
            raise ValueError("degree must be at least 1")
        self.d = d
        self.field = PrimeField(p)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n_levels(self) -> int:
        return self.d + 1

    @property
    def ambient_dim(self) -> int:
        return self.d + 1

    def forward_matrix(self, i: int) -> Matrix:
        """E_i -> E_{i+1}: (a, b) -> (0, z*b) in level coordinates."""
        d = self.d
        rows = [[self.field.zero()] * (d + 1) for _ in range(d + 1)]
        rows[d - i][0] = self.field.one()              # new b_1 = node value
        for j in range(1, i + 1):                      # new b_{j+1} = b_j
            rows[d - i + j][d - i + j] = self.field.one()
        return Matrix.from_rows(self.field, rows)

    def backward_matrix(self, i: int) -> Matrix:
        """E_{i+1} -> E_i: (a, b) -> (y*a, 0) in level coordinates."""
        d = self.d
        rows = [[self.field.zero()] * (d + 1) for _ in range(d + 1)]
        rows[1][0] = self.field.one()                  # new a_1 = node value
        for k in range(1, d - i):                      # new a_{k+1} = a_k
            rows[k + 1][k] = self.field.one()
        return Matrix.from_rows(self.field, rows)

    def chain(self, rank: int) -> LinkedChain:
        fs = [self.forward_matrix(i) for i in range(self.d)]
        gs = [self.backward_matrix(i) for i in range(self.d)]
        return LinkedChain(self.field, self.d + 1, self.d + 1, rank, fs, gs,
                           self.field.zero())

    def y_aspect_matrix(self, i: int) -> Matrix:
        """Project E_i onto the y-side polynomial (ascending, degree <= d-i)."""
        d = self.d
        rows = []
        for k in range(d - i + 1):
            v = [self.field.zero()] * (d + 1)
            v[k] = self.field.one()
            rows.append(v)
        return Matrix.from_rows(self.field, rows)

    def z_aspect_matrix(self, i: int) -> Matrix:
        """Project E_i onto the z-side polynomial (ascending, degree <= i)."""
        d = self.d
        rows = []
        v = [self.field.zero()] * (d + 1)
        v[0] = self.field.one()
        rows.append(v)
        for j in range(1, i + 1):
            v = [self.field.zero()] * (d + 1)
            v[d - i + j] = self.field.one()
            rows.append(v)
        return Matrix.from_rows(self.field, rows)

    def z_vanishing_space(self, i: int) -> Subspace:
        """Sections with b identically zero (rows supported on a_1..a_{d-i})."""
        return self._coordinate_space(range(1, self.d - i + 1))

    def y_vanishing_space(self, i: int) -> Subspace:
        """Sections with a identically zero (rows supported on b_1..b_i)."""
        return self._coordinate_space(range(self.d - i + 1, self.d + 1))

    def _coordinate_space(self, cols) -> Subspace:
        rows = []
        for c in cols:
            v = [self.field.zero()] * (self.d + 1)
            v[c] = self.field.one()
            rows.append(v)
        if not rows:
            return Subspace.zero_space(self.field, self.d + 1)
        return Subspace.from_rows(self.field, self.d + 1, rows)

    def section(self, i: int, a_coeffs: Sequence, b_coeffs: Sequence,
                ring=None) -> tuple:
        """Coordinate vector of the pair (a(y), b(z)) at level i."""
        ring = ring or self.field
        d = self.d
        a = [ring(x) for x in a_coeffs] + [ring.zero()] * (d - i + 1 - len(a_coeffs))
        b = [ring(x) for x in b_coeffs] + [ring.zero()] * (i + 1 - len(b_coeffs))
        if len(a) != d - i + 1 or len(b) != i + 1:
            raise ValueError("coefficient lists exceed the level degrees")
        if a[0] != b[0]:
            raise ValueError("sections must agree at the node: a(0) != b(0)")
        return tuple([a[0]] + a[1:] + b[1:])


def build_section_chain(d: int, p: int, rank: int) -> LinkedChain:
    """The (d+1)-step chain of section spaces; passes validate_chain, s = 0.

    ``rank`` is the dimension of the chain subspaces: a series of projective
    dimension r uses rank r+1.
    """
    return NodalModel(d, p).chain(rank)


class LimitSeriesPoint:
    """A linked point of the section chain, i.e. one limit series."""

    __slots__ = ("model", "point")

    def __init__(self, model: NodalModel, point: ChainPoint):
        self.model = model
        self.point = point

    @property
    def r(self) -> int:
        return self.point[0].dim - 1

    def __eq__(self, other):
        if not isinstance(other, LimitSeriesPoint):
            return NotImplemented
        return (self.model.d, self.model.p, self.point) == \
               (other.model.d, other.model.p, other.point)

    def __hash__(self):
        return hash((self.model.d, self.model.p, self.point))

    def __repr__(self):
        return "LimitSeriesPoint(d=%d, p=%d, %r)" % (
            self.model.d, self.model.p, self.point)

    def as_dict(self) -> dict:
        return {"d": self.model.d, "p": self.model.p,
                "point": self.point.as_dict()}


class EHPair:
    """An aspect pair: a degree-d series on each component plus its node
    vanishing sequences."""

    __slots__ = ("vy", "vz", "a_y", "a_z", "d")

    def __init__(self, vy: Subspace, vz: Subspace, a_y: tuple, a_z: tuple, d: int):
        self.vy = vy
        self.vz = vz
        self.a_y = tuple(a_y)
        self.a_z = tuple(a_z)
        self.d = d

    @classmethod
    def from_subspaces(cls, vy: Subspace, vz: Subspace, d: Optional[int] = None) -> "EHPair":
        if vy.ambient_dim != vz.ambient_dim:
            raise ValueError("aspects must share the degree bound")
        d = vy.ambient_dim - 1 if d is None else d
        if vy.dim != vz.dim:
            raise ValueError("aspects must have equal dimension")
        a_y = vanishing_sequence(vy, 0).vanishing
        a_z = vanishing_sequence(vz, 0).vanishing
        return cls(vy, vz, a_y, a_z, d)

    @property
    def r(self) -> int:
        return self.vy.dim - 1

    def key(self) -> tuple:
        return (self.vy.key(), self.vz.key())

    def __eq__(self, other):
        if not isinstance(other, EHPair):
            return NotImplemented
        return self.vy == other.vy and self.vz == other.vz

    def __hash__(self):
        return hash((self.vy, self.vz))

    def __repr__(self):
        return "EHPair(aY=%r, aZ=%r, d=%d)" % (self.a_y, self.a_z, self.d)

    def as_dict(self) -> dict:
        return {"d": self.d, "vy": self.vy.as_dict(), "vz": self.vz.as_dict(),
                "a_y": list(self.a_y), "a_z": list(self.a_z)}


def is_crude(pair: EHPair, d: Optional[int] = None) -> bool:
    """Node orders satisfy a_y[i] + a_z[r-i] >= d for every i."""
    d = pair.d if d is None else d
    r = pair.r
    return all(pair.a_y[i] + pair.a_z[r - i] >= d for i in range(r + 1))


def is_refined(pair: EHPair, d: Optional[int] = None) -> bool:
    """Node orders satisfy a_y[i] + a_z[r-i] = d for every i."""
    d = pair.d if d is None else d
    r = pair.r
    return all(pair.a_y[i] + pair.a_z[r - i] == d for i in range(r + 1))


def forgetful_map(model: NodalModel, point: ChainPoint) -> EHPair:
    """Send a linked point to its outer aspect pair with node data.

    Level-0 coordinates are exactly the ascending y-coefficients and level-d
    coordinates the ascending z-coefficients, so both aspects are literal
    reinterpretations of the boundary subspaces.
    """
    vy = Subspace.from_rows(model.field, model.d + 1,
                            [list(r) for r in point[0].basis_rows()])
    vz = Subspace.from_rows(model.field, model.d + 1,
                            [list(r) for r in point[model.d].basis_rows()])
    return EHPair.from_subspaces(vy, vz, model.d)


def _node_filtration_rows(v: Subspace, min_order: int, shift: int,
                          out_len: int) -> list:
    """Rows of v with node order >= min_order, divided by the coordinate
    shift (the ascending basis is already the node filtration)."""
    rows = []
    for i, pc in enumerate(v.pivots):
        if pc >= min_order:
            row = v.basis.row(i)
            rows.append(list(row[shift:shift + out_len]))
    return rows


def reconstruct_refined(pair: EHPair, d: Optional[int] = None) -> LimitSeriesPoint:
    """The unique linked point over a refined pair.

    Level i glues the order->=i part of the y-aspect (shifted down i steps)
    with the order->=(d-i) part of the z-aspect (shifted down d-i steps),
    matching node values; refinedness makes every level land on dimension
    r+1.
    """
    d = pair.d if d is None else d
    if not is_refined(pair, d):
        raise ValueError("reconstruction requires a refined pair")
    model = NodalModel(d, pair.vy.ring.p)
    r = pair.r
    spaces = []
    for i in range(d + 1):
        a_rows = _node_filtration_rows(pair.vy, i, i, d - i + 1)
        a_div = Subspace.from_rows(model.field, d - i + 1, a_rows) if a_rows \
            else Subspace.zero_space(model.field, d - i + 1)
        b_rows = _node_filtration_rows(pair.vz, d - i, d - i, i + 1)
        b_div = Subspace.from_rows(model.field, i + 1, b_rows) if b_rows \
            else Subspace.zero_space(model.field, i + 1)
        v_i = intersect(preimage(model.y_aspect_matrix(i), a_div),
                        preimage(model.z_aspect_matrix(i), b_div))
        if v_i.dim != r + 1:
            raise RuntimeError(
                "refined reconstruction produced dimension %d at level %d"
                % (v_i.dim, i))
        spaces.append(v_i)
    point = ChainPoint(spaces)
    chain = model.chain(r + 1)
    from .chains import is_linked_point

    if not is_linked_point(chain, point):
        raise RuntimeError("refined reconstruction is not linked")
    return LimitSeriesPoint(model, point)


def lift_crude(pair: EHPair, d: Optional[int] = None) -> LimitSeriesPoint:
    """A linked point over any crude pair, built level by level.

    Each middle level is generated by the forward image of the previous
    level together with the maximal block of the backward preimage vanishing
    on the z-side; when that falls one short, the missing generator is either
    a glued section (both sides nonvanishing at the node, available exactly
    when the z-aspect has a section of node order d-i) or one more y-side
    vanishing section divided down from the z-aspect.  Free choices are
    resolved by taking first rows of canonical bases, so the output is
    deterministic.
    """
    d = pair.d if d is None else d
    if not is_crude(pair, d):
        raise ValueError("lifting requires a crude pair")
    model = NodalModel(d, pair.vy.ring.p)
    r = pair.r
    field_ = model.field
    v0 = Subspace.from_rows(field_, d + 1,
                            [list(row) for row in pair.vy.basis_rows()])
    vd = Subspace.from_rows(field_, d + 1,
                            [list(row) for row in pair.vz.basis_rows()])
    spaces = [v0]
    for i in range(1, d):
        prev = spaces[-1]
        image_block = apply_map(model.forward_matrix(i - 1), prev)
        z_van = model.z_vanishing_space(i)
        back_pre = preimage(model.backward_matrix(i - 1), prev)
        kernel_block = intersect(z_van, back_pre)
        w = image_block.sum(kernel_block)
        if w.dim == r:
            w = w.sum(_crude_patch(model, pair, i, prev, w))
        if w.dim != r + 1:
            raise RuntimeError(
                "crude lifting produced dimension %d at level %d" % (w.dim, i))
        spaces.append(w)
    spaces.append(vd)
    point = ChainPoint(spaces)
    chain = model.chain(r + 1)
    from .chains import is_linked_point

    if not is_linked_point(chain, point):
        raise RuntimeError("crude lifting is not linked")
    return LimitSeriesPoint(model, point)


def _crude_patch(model: NodalModel, pair: EHPair, i: int, prev: Subspace,
                 partial: Subspace) -> Subspace:
    """The (r+1)-st generator when image + kernel blocks fall one short."""
    d = model.d
    field_ = model.field
    # the previous level's z-vanishing block and its unique node-order-1 row
    w_prev = intersect(model.z_vanishing_space(i - 1), prev)
    r3_prev = w_prev.dim
    if r3_prev == 0:
        raise RuntimeError("short level without a z-vanishing block")
    order_one = None
    for k, pc in enumerate(w_prev.pivots):
        if pc == 1:
            order_one = w_prev.basis.row(k)
            break
    if order_one is None:
        raise RuntimeError("short level without an order-one section")
    a_z_threshold = pair.a_z[r3_prev - 1]
    if a_z_threshold == d - i:
        # glue: divide the order-one section by y, pair it with the z-aspect
        # section of node order exactly d-i (both pivot-normalised, so the
        # node values already agree at 1)
        a_star = list(order_one[1:d - i + 2])
        b_row = None
        for k, pc in enumerate(pair.vz.pivots):
            if pc == d - i:
                b_row = pair.vz.basis.row(k)
                break
        if b_row is None:
            raise RuntimeError("z-aspect lost its order d-i section")
        b_star = list(b_row[d - i:])
        vec = model.section(i, a_star, b_star)
        return Subspace.from_rows(field_, d + 1, [vec])
    # otherwise add one more y-side vanishing generator divided from the
    # z-aspect sections of node order > d-i
    for k, pc in enumerate(pair.vz.pivots):
        if pc >= d - i + 1:
            b = list(pair.vz.basis.row(k)[d - i:])
            vec = model.section(i, [field_.zero()], b)
            if not partial.contains_vector(vec):
                return Subspace.from_rows(field_, d + 1, [vec])
    raise RuntimeError("no independent y-vanishing generator available")


def enumerate_limit_series(d: int, r: int, q: int,
                           constraints: Optional[Sequence[dict]] = None,
                           budget: Optional[int] = None) -> Iterator[LimitSeriesPoint]:
    """All linked points of the degree-d section chain with rank r+1 spaces.

    ``constraints`` is a list of {"side": "Y"|"Z", "point": value-or-"inf",
    "min": [a_0..a_r]} lower bounds on vanishing sequences, imposed on the
    y-aspect of level 0 for Y-points and the z-aspect of level d for
    Z-points.  Order is deterministic.
    """
    model = NodalModel(d, q)
    chain = model.chain(r + 1)
    y_cons = [c for c in (constraints or []) if c["side"] == "Y"]
    z_cons = [c for c in (constraints or []) if c["side"] == "Z"]
    for pt in enumerate_points(chain, budget=budget):
        pair = forgetful_map(model, pt)
        if all(_meets_bound(pair.vy, c) for c in y_cons) and \
                all(_meets_bound(pair.vz, c) for c in z_cons):
            yield LimitSeriesPoint(model, pt)


def _meets_bound(aspect: Subspace, constraint: dict) -> bool:
    point = constraint["point"]
    data = vanishing_sequence(aspect, INFINITY if point == "inf" else point)
    bound = list(constraint["min"])
    if len(bound) != len(data.vanishing):
        raise ValueError("constraint length must be r+1")
    return all(a >= b for a, b in zip(data.vanishing, bound))


@dataclass
class ImageReport:
    """Comparison of {forgetful image of all linked points} with {all crude
    pairs}, plus the preimage multiplicities."""

    d: int
    r: int
    q: int
    points: int = 0
    image_size: int = 0
    crude_pairs: int = 0
    refined_pairs: int = 0
    refined_points: int = 0     # points over refined pairs, vs `points` total
    equal: bool = False
    fr_not_crude: list = field(default_factory=list)
    crude_not_fr: list = field(default_factory=list)
    preimage_counts: dict = field(default_factory=dict)
    refined_preimages_all_unique: bool = False

    def as_dict(self) -> dict:
        return {"schema_version": 1, "d": self.d, "r": self.r, "q": self.q,
                "points": self.points, "image_size": self.image_size,
                "crude_pairs": self.crude_pairs,
                "refined_pairs": self.refined_pairs,
                "refined_points": self.refined_points, "equal": self.equal,
                "fr_not_crude": self.fr_not_crude,
                "crude_not_fr": self.crude_not_fr,
                "preimage_counts": [
                    [list(map(list, key)), cnt]
                    for key, cnt in sorted(self.preimage_counts.items())],
                "refined_preimages_all_unique":
                    self.refined_preimages_all_unique}


def fr_image_report(d: int, r: int, q: int,
                    budget: Optional[int] = None) -> ImageReport:
    """Exhaustively compare the forgetful image with the crude locus."""
    model = NodalModel(d, q)
    report = ImageReport(d, r, q)
    preimages = {}
    image_pairs = {}
    for lsp in enumerate_limit_series(d, r, q, budget=budget):
        report.points += 1
        pair = forgetful_map(model, lsp.point)
        key = pair.key()
        preimages[key] = preimages.get(key, 0) + 1
        image_pairs[key] = pair
    report.image_size = len(preimages)
    crude_keys = set()
    refined_keys = set()
    for vy in enumerate_subspaces(d + 1, r + 1, q, budget=budget):
        for vz in enumerate_subspaces(d + 1, r + 1, q):
            pair = EHPair.from_subspaces(vy, vz, d)
            if is_crude(pair):
                crude_keys.add(pair.key())
                if is_refined(pair):
                    refined_keys.add(pair.key())
    report.crude_pairs = len(crude_keys)
    report.refined_pairs = len(refined_keys)
    report.refined_points = sum(preimages.get(k, 0) for k in refined_keys)
    fr_keys = set(preimages)
    report.equal = fr_keys == crude_keys
    report.fr_not_crude = [list(map(list, k)) for k in sorted(fr_keys - crude_keys)]
    report.crude_not_fr = [list(map(list, k)) for k in sorted(crude_keys - fr_keys)]
    report.preimage_counts = {k: v for k, v in preimages.items()}
    report.refined_preimages_all_unique = all(
        preimages.get(k, 0) == 1 for k in refined_keys)
    return report


def vanishing_sequence_dual(v: Subspace) -> tuple:
    """Scheme-valued node vanishing sequence of a dual-number aspect.

    Coordinates are ascending polynomial coefficients; the m-th evaluation
    map reads off the first m of them.  a_j is the largest m for which every
    (j+1)-minor of the truncated basis vanishes identically in the ring, so
    an eps in a low coefficient counts as nonzero even though it dies at the
    closed point.
    """
    if not v.ring.dual:
        raise ValueError("expected a dual-number subspace")
    if not v.is_free_cofree:
        raise ValueError("aspect is not free with free quotient over the "
                         "dual numbers")
    m = v.ambient_dim - 1
    basis = v.basis
    out = []
    for j in range(v.dim):
        a_j = 0
        for i in range(1, m + 1):
            trunc = basis.submatrix(range(basis.rows), range(i))
            if rank_everywhere_at_most(trunc, j):
                a_j = i
            else:
                break
        out.append(a_j)
    return tuple(out)


@dataclass
class DualProbeReport:
    p: int
    d: int
    r: int
    linked_over_dual: bool
    a_y: tuple
    a_z: tuple
    a_y_mod_eps: tuple
    a_z_mod_eps: tuple

    @property
    def first_order_sum(self) -> int:
        return self.a_y[0] + self.a_z[0]

    def as_dict(self) -> dict:
        return {"schema_version": 1, "p": self.p, "d": self.d, "r": self.r,
                "linked_over_dual": self.linked_over_dual,
                "a_y": list(self.a_y), "a_z": list(self.a_z),
                "a_y_mod_eps": list(self.a_y_mod_eps),
                "a_z_mod_eps": list(self.a_z_mod_eps),
                "first_order_sum": self.first_order_sum,
                "d_inequality_holds": self.first_order_sum >= self.d,
                "d_minus_1_inequality_holds":
                    self.first_order_sum >= self.d - 1}


def dual_probe(p: int) -> DualProbeReport:
    """The first-order probe point: degree 2, rank 0, sections
    (y^2 + eps*y, 0), (y + eps, eps), (eps, z + eps) over GF(p)[eps].

    Its node orders drop below the crude threshold scheme-theoretically
    (sum d-1) while the reductions mod eps are refined; this is the standard
    counterexample shape for the degree inequality at first order.
    """
    model = NodalModel(2, p)
    ring = DualNumbers(p)
    eps = ring.eps()
    one = ring.one()
    v0 = Subspace.from_rows(ring, 3, [model.section(0, [0, eps, one], [0], ring)])
    v1 = Subspace.from_rows(ring, 3, [model.section(1, [eps, one], [eps], ring)])
    v2 = Subspace.from_rows(ring, 3, [model.section(2, [eps], [eps, one], ring)])
    spaces = [v0, v1, v2]
    linked = True
    for i in range(2):
        fdual = model.forward_matrix(i).to_dual()
        gdual = model.backward_matrix(i).to_dual()
        for row in spaces[i].basis_rows():
            if not spaces[i + 1].contains_vector(fdual.apply(row)):
                linked = False
        for row in spaces[i + 1].basis_rows():
            if not spaces[i].contains_vector(gdual.apply(row)):
                linked = False
    a_y = vanishing_sequence_dual(v0)        # level-0 coords = y-coefficients
    a_z = vanishing_sequence_dual(v2)        # level-d coords = z-coefficients
    a_y_mod = vanishing_sequence(v0.mod_eps(), 0).vanishing
    a_z_mod = vanishing_sequence(v2.mod_eps(), 0).vanishing
    return DualProbeReport(p, 2, 0, linked, a_y, a_z, a_y_mod, a_z_mod)
