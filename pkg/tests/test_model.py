"""Complexes, chain maps, factorizations, lifting problems and the Kunneth check."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sdga.core import AlgebraError
from sdga import linalg
from sdga.model import (
    ChainMap,
    Complex,
    cell_catalog,
    cohomology_dims,
    compose_chain_maps,
    cone,
    direct_sum,
    disk_complex,
    factorize,
    identity_chain_map,
    invert_matrix,
    is_acyclic,
    is_cofibration,
    is_fibration,
    is_weak_equivalence,
    kunneth_report,
    random_chain_map,
    random_complex,
    random_invertible,
    solve_lift,
    sphere_complex,
    sphere_to_disk,
    sym_dga,
    verify_factorization,
    zero_chain_map,
    zero_complex,
    zero_to_disk,
)

MODES = ("acyclic_cofibration_fibration", "cofibration_acyclic_fibration")


def projection_onto(summand: Complex, total: Complex, include: ChainMap) -> ChainMap:
    """Transpose the coordinate inclusion of a direct summand."""
    blocks = {}
    for key, mat in include.blocks.items():
        rows = summand.dim(key)
        cols = total.dim(key)
        out = linalg.zeros(rows, cols)
        for i in range(cols):
            for j in range(rows):
                out[j][i] = mat[i][j]
        blocks[key] = out
    return ChainMap(total, summand, blocks)


# -- complexes ---------------------------------------------------------------------


def test_complex_validation():
    with pytest.raises(AlgebraError, match="wrong shape"):
        Complex({(0, 0): 1, (1, 1): 1}, {(0, 0): [[Fraction(1)], [Fraction(2)]]})
    with pytest.raises(AlgebraError, match="d\\^2"):
        Complex(
            {(0, 0): 1, (1, 1): 1, (2, 0): 1},
            {(0, 0): [[Fraction(1)]], (1, 1): [[Fraction(1)]]},
        )


def test_cells_and_catalog():
    d = disk_complex(0, 0)
    assert d.dims == {(0, 0): 1, (1, 1): 1}
    assert is_acyclic(d)
    s = sphere_complex(2, 1)
    assert cohomology_dims(s) == {(2, 1): 1}
    catalog = cell_catalog()
    assert len(catalog) == 32
    for name, c in catalog.items():
        if name.startswith("D"):
            assert is_acyclic(c), name
        else:
            assert cohomology_dims(c) == dict(c.dims), name


def test_direct_sum_cohomology_adds():
    rng = random.Random(60)
    for _ in range(5):
        a = random_complex(rng)
        b = random_complex(rng)
        total, inc_a, inc_b = direct_sum(a, b)
        assert total.total_dim() == a.total_dim() + b.total_dim()
        ha, hb, ht = cohomology_dims(a), cohomology_dims(b), cohomology_dims(total)
        for key in set(ha) | set(hb) | set(ht):
            assert ht.get(key, 0) == ha.get(key, 0) + hb.get(key, 0)


def test_chain_map_validation():
    d = disk_complex(0, 0)
    s = sphere_complex(0, 0)
    with pytest.raises(AlgebraError, match="does not commute"):
        ChainMap(s, d, {(0, 0): [[Fraction(1)]]})
    # mapping the sphere to the top cell is a chain map
    ChainMap(sphere_complex(1, 1), d, {(1, 1): [[Fraction(1)]]})
    zero_chain_map(s, d).validate()
    assert compose_chain_maps(identity_chain_map(d), identity_chain_map(d)) == identity_chain_map(d)


def test_cone_detects_equivalences():
    rng = random.Random(61)
    for _ in range(5):
        c = random_complex(rng)
        assert is_acyclic(cone(identity_chain_map(c)))
    s = sphere_complex(0, 0)
    collapse = zero_chain_map(s, zero_complex())
    assert not is_weak_equivalence(collapse)
    assert is_weak_equivalence(identity_chain_map(s))


def test_generating_map_predicates():
    f = sphere_to_disk(0, 0)
    assert is_cofibration(f)
    assert not is_fibration(f)
    assert not is_weak_equivalence(f)
    g = zero_to_disk(0, 0)
    assert is_cofibration(g)
    assert is_weak_equivalence(g)
    assert not is_fibration(g)


# -- factorization -----------------------------------------------------------------


def test_factorize_generating_map():
    f = sphere_to_disk(0, 0)
    for mode in MODES:
        j, q = factorize(f, mode)
        report = verify_factorization(f, j, q, mode)
        assert report["ok"], (mode, report)


def test_factorize_random_panel():
    rng = random.Random(62)
    for _ in range(8):
        a = random_complex(rng)
        b = random_complex(rng)
        f = random_chain_map(rng, a, b)
        for mode in MODES:
            j, q = factorize(f, mode)
            report = verify_factorization(f, j, q, mode)
            assert report["ok"], (mode, report)


def test_two_out_of_three():
    rng = random.Random(63)
    for _ in range(10):
        a = random_complex(rng)
        b = random_complex(rng)
        f = random_chain_map(rng, a, b)
        j, q = factorize(f, "acyclic_cofibration_fibration")
        assert is_weak_equivalence(j)
        assert is_weak_equivalence(f) == is_weak_equivalence(q)


# -- lifting problems ----------------------------------------------------------------


def test_solve_lift_against_projection():
    rng = random.Random(64)
    for _ in range(6):
        a = random_complex(rng, max_cells=2)
        b = random_complex(rng, max_cells=2)
        f = random_chain_map(rng, a, b)
        j, _ = factorize(f, "acyclic_cofibration_fibration")
        middle = j.target
        y = random_complex(rng, max_cells=2)
        z = random_complex(rng, max_cells=2)
        total, inc_y, _ = direct_sum(y, z)
        p = projection_onto(y, total, inc_y)
        assert is_fibration(p)
        bottom = random_chain_map(rng, middle, y)
        top = compose_chain_maps(inc_y, compose_chain_maps(bottom, j))
        h, cert = solve_lift(j, p, top, bottom)
        assert h is not None, cert
        assert compose_chain_maps(h, j) == top
        assert compose_chain_maps(p, h) == bottom


def test_solve_lift_negative_with_certificate():
    s = sphere_complex(-1, 1)
    x = disk_complex(-1, 1)
    p = ChainMap(x, s, {(-1, 1): [[Fraction(1)]]})
    i = zero_chain_map(zero_complex(), s)
    top = zero_chain_map(zero_complex(), x)
    bottom = ChainMap(s, s, {(-1, 1): [[Fraction(1)]]})
    h, cert = solve_lift(i, p, top, bottom)
    assert h is None
    assert cert["consistent"] is False
    assert cert["rank"] < cert["rank_augmented"]


# -- invariance and Kunneth -----------------------------------------------------------


def test_cohomology_is_basis_independent():
    rng = random.Random(65)
    for _ in range(5):
        c = random_complex(rng)
        change = {
            key: random_invertible(rng, n) for key, n in c.dims.items() if n
        }
        diff = {}
        for key, block in c.diff.items():
            nxt = (key[0] + 1, (key[1] + 1) % 2)
            if not c.dim(key) or not c.dim(nxt):
                continue
            mat = linalg.mat_mul(change[nxt], block)
            diff[key] = linalg.mat_mul(mat, invert_matrix(change[key]))
        conjugated = Complex(dict(c.dims), diff)
        assert cohomology_dims(conjugated) == cohomology_dims(c)


def test_kunneth_on_random_complexes():
    rng = random.Random(66)
    for _ in range(3):
        v = random_complex(rng, max_cells=2, weight_range=(-1, 1))
        report = kunneth_report(v, -2, 2, 4)
        assert report["all_agree"], report


def test_sym_dga_structure():
    dga, names = sym_dga(sphere_complex(1, 1))
    assert len(dga.table) == 1
    gen = names[((1, 1), 0)]
    assert dga.differential.image_of(gen).is_zero()
    dga, names = sym_dga(disk_complex(0, 0))
    bottom = names[((0, 0), 0)]
    top = names[((1, 1), 0)]
    image = dga.differential.image_of(bottom)
    assert not image.is_zero()
    assert list(image.terms) == [tuple(1 if g.name == top else 0 for g in dga.table.generators)]
