import itertools
import random

import pytest

from lgseries.fields import DualNumbers, Fp, PrimeField
from lgseries.linalg import (BudgetError, Matrix, Subspace, apply_map,
                             contains, enumerate_between, enumerate_subspaces,
                             gaussian_binomial, image, intersect, kernel,
                             preimage, rank_everywhere_at_most, rref, solve,
                             sum_spaces)

GF2 = PrimeField(2)
GF3 = PrimeField(3)
GF5 = PrimeField(5)


def mat(field, rows):
    return Matrix.from_rows(field, rows)


def all_subspaces(d, q):
    for r in range(d + 1):
        yield from enumerate_subspaces(d, r, q)


def test_rref_identity():
    m = Matrix.identity(GF2, 3)
    ech = rref(m)
    assert ech.matrix == m
    assert ech.rank == 3
    assert ech.unit_pivots


def test_rref_rank_one():
    ech = rref(mat(GF5, [[1, 2], [2, 4]]))
    assert ech.rank == 1
    assert ech.matrix.row_list() == [[Fp(1, 5), Fp(2, 5)]]


def test_rref_dual_flagged_row():
    D = DualNumbers(3)
    m = mat(D, [[D(0, 1), D(1, 0)], [D(0, 0), D(0, 0)]])
    ech = rref(m)
    assert ech.rank == 1
    assert not ech.unit_pivots
    assert ech.matrix.row_list() == [[D(0, 1), D(1, 0)]]


def test_rref_dual_torsion_row():
    D = DualNumbers(3)
    ech = rref(mat(D, [[D(0, 2), D(0, 1)]]))
    assert ech.rank == 0
    assert not ech.unit_pivots
    # torsion rows are normalised via their eps parts
    assert ech.matrix.row_list() == [[D(0, 1), D(0, 2)]]


def test_kernel_zero_map():
    k = kernel(Matrix.zero(GF2, 2, 2))
    assert k.dim == 2


def test_kernel_projection():
    k = kernel(mat(GF3, [[1, 0], [0, 0]]))
    assert k.dim == 1
    assert k.basis.row_list() == [[Fp(0, 3), Fp(1, 3)]]


def test_kernel_nodal_pair_coordinates():
    # degree-2 model in redundant pair coordinates (a0, a1, a2, b0): the
    # forward map keeps only b0, shifted into the z-side; its kernel is the
    # 3-dimensional space of pairs (a, 0).  Oracle: solve the 4x4 system by
    # independent elimination over the integers mod 2 (done by hand).
    f = mat(GF2, [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
    k = kernel(f)
    assert k.dim == 3
    expected = Subspace.from_rows(GF2, 4, [[1, 0, 0, 0], [0, 1, 0, 0],
                                           [0, 0, 1, 0]])
    assert k == expected


def test_intersect_idempotent_random():
    rng = random.Random(99)
    for _ in range(40):
        d = rng.randrange(1, 6)
        r = rng.randrange(0, d + 1)
        rows = [[rng.randrange(2) for _ in range(d)] for _ in range(r)]
        u = Subspace.from_rows(GF2, d, rows) if rows \
            else Subspace.zero_space(GF2, d)
        assert intersect(u, u) == u
        assert sum_spaces(u, u) == u


def test_modular_law_exhaustive_gf2_d_le_4():
    for d in range(1, 5):
        spaces = list(all_subspaces(d, 2))
        for u, w in itertools.product(spaces, repeat=2):
            s = sum_spaces(u, w)
            meet = intersect(u, w)
            assert s.dim + meet.dim == u.dim + w.dim
            assert contains(s, u) and contains(s, w)
            assert contains(u, meet) and contains(w, meet)


def test_preimage_projection_example():
    m = mat(GF3, [[1, 0], [0, 0]])
    w = Subspace.from_rows(GF3, 2, [[1, 0]])
    assert preimage(m, w).dim == 2  # every v maps to (v0, 0)


def test_preimage_soundness_random():
    rng = random.Random(4242)
    for _ in range(60):
        d = rng.randrange(1, 5)
        m = mat(GF2, [[rng.randrange(2) for _ in range(d)] for _ in range(d)])
        w_rows = [[rng.randrange(2) for _ in range(d)]
                  for _ in range(rng.randrange(0, d + 1))]
        w = Subspace.from_rows(GF2, d, w_rows) if w_rows \
            else Subspace.zero_space(GF2, d)
        pre = preimage(m, w)
        # every vector of the preimage maps into w, and none outside does
        for vec in itertools.product(range(2), repeat=d):
            v = tuple(Fp(x, 2) for x in vec)
            img = m.apply(v)
            if pre.contains_vector(v):
                assert w.contains_vector(img)
            else:
                assert not w.contains_vector(img)


def test_image_vs_preimage_duality_random():
    # w lies in the image of m exactly when the preimage of span{w} is
    # strictly larger than the kernel (for w != 0)
    rng = random.Random(7)
    for _ in range(60):
        d = rng.randrange(1, 5)
        m = mat(GF2, [[rng.randrange(2) for _ in range(d)] for _ in range(d)])
        w = tuple(Fp(rng.randrange(2), 2) for _ in range(d))
        if not any(x.v for x in w):
            continue
        in_image = image(m).contains_vector(w)
        pre = preimage(m, Subspace.from_rows(GF2, d, [w]))
        hits = any(m.apply(tuple(Fp(x, 2) for x in vec)) == w
                   for vec in itertools.product(range(2), repeat=d))
        assert in_image == hits
        assert in_image == (pre.dim > kernel(m).dim)


def test_determinant_against_integer_oracle():
    from lgseries.fields import integer_determinant

    rng = random.Random(31)
    for _ in range(80):
        n = rng.randrange(1, 6)
        rows = [[rng.randrange(7) for _ in range(n)] for _ in range(n)]
        F7 = PrimeField(7)
        m = mat(F7, rows)
        assert m.det().v == integer_determinant(rows) % 7


def test_enumerate_counts_match_gaussian_binomial():
    for d in range(6):
        for r in range(d + 1):
            for q in (2, 3):
                n = sum(1 for _ in enumerate_subspaces(d, r, q))
                assert n == gaussian_binomial(d, r, q)


def test_enumerate_examples():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(4, 2, 2) == 35
    assert sum(1 for _ in enumerate_subspaces(2, 1, 2)) == 3
    assert sum(1 for _ in enumerate_subspaces(4, 2, 2)) == 35
    zero = list(enumerate_subspaces(3, 0, 5))
    assert len(zero) == 1 and zero[0].dim == 0


def test_enumerate_distinct_and_deterministic():
    pts = list(enumerate_subspaces(4, 2, 2))
    assert len(set(pts)) == len(pts)
    again = list(enumerate_subspaces(4, 2, 2))
    assert pts == again


def test_enumerate_budget():
    with pytest.raises(BudgetError) as err:
        list(enumerate_subspaces(4, 2, 2, budget=10))
    assert err.value.count == 35


def test_enumerate_partition_by_pivots():
    from lgseries.linalg import pivot_patterns

    whole = list(enumerate_subspaces(4, 2, 2))
    parts = []
    for pat in pivot_patterns(4, 2):
        parts.extend(enumerate_subspaces(4, 2, 2, pivots=pat))
    assert whole == parts


def test_rref_canonicity_under_row_operations():
    rng = random.Random(11)
    for d in range(1, 5):
        for u in all_subspaces(d, 2):
            if u.dim == 0:
                continue
            rows = [list(r) for r in u.basis_rows()]
            # random invertible row operations
            for _ in range(6):
                i, j = rng.randrange(u.dim), rng.randrange(u.dim)
                if i != j:
                    rows[i] = [a + b for a, b in zip(rows[i], rows[j])]
            again = Subspace.from_rows(GF2, d, rows)
            assert again == u


def test_subspace_between_enumerator():
    lower = Subspace.from_rows(GF2, 4, [[1, 0, 0, 0]])
    upper = Subspace.from_rows(GF2, 4, [[1, 0, 0, 0], [0, 1, 0, 0],
                                        [0, 0, 1, 0]])
    mids = list(enumerate_between(lower, upper, 2))
    # 2-spaces between a line and a 3-space = lines of the 2-dim quotient
    assert len(mids) == gaussian_binomial(2, 1, 2)
    assert len(set(mids)) == len(mids)
    for v in mids:
        assert contains(v, lower) and contains(upper, v) and v.dim == 2


def test_solve_and_apply():
    m = mat(GF5, [[1, 2], [3, 4]])
    x = solve(m, [Fp(1, 5), Fp(2, 5)])
    assert m.apply(x) == (Fp(1, 5), Fp(2, 5))
    bad = mat(GF5, [[1, 2], [2, 4]])
    assert solve(bad, [Fp(0, 5), Fp(1, 5)]) is None


def test_rank_everywhere_examples():
    D = DualNumbers(3)
    assert rank_everywhere_at_most(Matrix.zero(D, 2, 2), 0)
    m = mat(D, [[D(0, 1)]])
    assert not rank_everywhere_at_most(m, 0)  # eps is not 0 in the ring
    assert rank_everywhere_at_most(m, 1)
    # the second-order node evaluation of the probe section y^2 + eps*y:
    # coefficients (0, eps); not rank <= 0 everywhere, but rank <= 1
    beta2 = mat(D, [[D(0, 0), D(0, 1)]])
    assert not rank_everywhere_at_most(beta2, 0)
    assert rank_everywhere_at_most(beta2, 1)


def test_dual_rank_implies_closed_point_rank():
    rng = random.Random(5)
    D = DualNumbers(2)
    for _ in range(60):
        rows = [[D(rng.randrange(2), rng.randrange(2)) for _ in range(3)]
                for _ in range(2)]
        m = mat(D, rows)
        for j in range(3):
            if rank_everywhere_at_most(m, j):
                assert rref(m.mod_eps()).rank <= j


def test_dual_subspace_membership():
    D = DualNumbers(2)
    v = Subspace.from_rows(D, 2, [[D(0, 1), D(1, 0)]])  # span{(eps, 1)}
    assert v.contains_vector([D(0, 0), D(0, 1)])        # eps * generator
    assert not v.contains_vector([D(1, 0), D(0, 0)])
    assert v.is_free_cofree
    torsion = Subspace.from_rows(D, 2, [[D(0, 1), D(0, 0)]])
    assert not torsion.is_free_cofree


def test_dual_subspace_canonical_equality():
    D = DualNumbers(3)
    a = Subspace.from_rows(D, 2, [[D(0, 1), D(1, 0)]])
    b = Subspace.from_rows(D, 2, [[D(0, 2), D(2, 0)]])  # unit multiple
    assert a == b


def test_apply_map_and_image():
    m = mat(GF3, [[1, 0], [0, 0]])
    u = Subspace.from_rows(GF3, 2, [[1, 1]])
    assert apply_map(m, u) == Subspace.from_rows(GF3, 2, [[1, 0]])
    assert image(m) == Subspace.from_rows(GF3, 2, [[1, 0]])


def test_serialization_roundtrip():
    m = mat(GF5, [[1, 2], [3, 4]])
    assert Matrix.from_dict(m.as_dict()) == m
    u = Subspace.from_rows(GF5, 2, [[1, 2]])
    assert Subspace.from_dict(u.as_dict()) == u
    D = DualNumbers(3)
    md = mat(D, [[D(1, 2), D(0, 1)]])
    assert Matrix.from_dict(md.as_dict()) == md
