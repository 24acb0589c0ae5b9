import itertools
import random
from fractions import Fraction

import pytest

from wreathq.cyclotomic import Scalar
from wreathq.errors import FormatError
from wreathq.linalg import Mat, hstack, rank, rref, solve_in_span
from wreathq.modules import WreathModule, build_outer_tensor, module_character
from wreathq.cubes import (
    Cube, cohomology, complex_from_cube, cone_faces, euler_characteristic,
    module_cohomology, module_cube,
)
from wreathq.reflection import reflection_functor
from wreathq.symmetric import Perm, YoungDiagram

from conftest import make_params, mat, simple_at


def test_one_edge_isomorphism_cube():
    cube = Cube((1,), {(): 1, (1,): 1}, {((), 1): Mat.identity(1)})
    data = cohomology(complex_from_cube(cube))
    assert data.dims == (0, 0)


def test_square_all_identity():
    spaces = {(): 1, (1,): 1, (2,): 1, (1, 2): 1}
    maps = {((), 1): Mat.identity(1), ((), 2): Mat.identity(1),
            ((1,), 2): Mat.identity(1), ((2,), 1): Mat.identity(1)}
    cx = complex_from_cube(Cube((1, 2), spaces, maps))
    assert cx.dims() == [1, 2, 1]
    assert cohomology(cx).dims == (0, 0, 0)


def test_zero_maps_give_binomial_cohomology():
    spaces = {(): 2, (1,): 2, (2,): 2, (1, 2): 2}
    cx = complex_from_cube(Cube((1, 2), spaces, {}))
    assert cohomology(cx).dims == (2, 4, 2)


def test_non_commuting_cube_rejected():
    spaces = {(): 1, (1,): 1, (2,): 1, (1, 2): 1}
    maps = {((), 1): Mat.identity(1), ((), 2): Mat.identity(1),
            ((1,), 2): Mat.identity(1), ((2,), 1): -Mat.identity(1)}
    with pytest.raises(FormatError):
        complex_from_cube(Cube((1, 2), spaces, maps))


def _random_invertible(rng, dim):
    while True:
        p = Mat(dim, dim, [Scalar.rational(rng.randint(-2, 2)) for _ in range(dim * dim)])
        if rank(p) == dim:
            return p


def _inverse(p):
    red, piv = rref(hstack([p, Mat.identity(p.rows)]))
    return Mat(p.rows, p.rows,
               [red[r, p.rows + c] for r in range(p.rows) for c in range(p.rows)])


def _column_space_basis(m):
    red, piv = rref(m.transpose())
    rows = [red.row(k) for k in range(len(piv))]
    return Mat.from_rows(rows).transpose() if rows else Mat.zeros(m.rows, 0)


def _idempotent_cube(rng, m, dim):
    """Random commuting idempotents (conjugated 0/1 diagonals), as an image cube."""
    p = _random_invertible(rng, dim)
    pinv = _inverse(p)
    psis = []
    for _ in range(m):
        diag = Mat.from_rows([[1 if (r == c and rng.random() < 0.6) else 0
                               for c in range(dim)] for r in range(dim)])
        psis.append(p @ diag @ pinv)
    for a in psis:
        assert a @ a == a
        for b in psis:
            assert a @ b == b @ a
    delta = tuple(range(1, m + 1))
    bases = {}
    for k in range(m + 1):
        for subset in itertools.combinations(delta, k):
            cur = Mat.identity(dim)
            for q in subset:
                cur = psis[q - 1] @ cur
            bases[subset] = _column_space_basis(cur)
    spaces = {s: b.cols for s, b in bases.items()}
    maps = {}
    for subset in spaces:
        for q in delta:
            if q in subset:
                continue
            bigger = tuple(sorted(subset + (q,)))
            image = psis[q - 1] @ bases[subset]
            maps[(subset, q)] = solve_in_span(bases[bigger], image)
    return Cube(delta, spaces, maps)


@pytest.mark.parametrize("m,dim,seed", [(1, 3, 1), (2, 3, 2), (2, 4, 3), (3, 4, 4)])
def test_idempotent_cube_has_no_higher_cohomology(m, dim, seed):
    cube = _idempotent_cube(random.Random(seed), m, dim)
    data = cohomology(complex_from_cube(cube))
    assert all(d == 0 for d in data.dims[1:]), data.dims


def test_idempotent_cube_diagonal_example():
    # the two commuting idempotents diag(1,0), diag(0,1) on k^2
    spaces = {(): 2, (1,): 1, (2,): 1, (1, 2): 0}
    maps = {((), 1): mat([[1, 0]]), ((), 2): mat([[0, 1]]),
            ((1,), 2): Mat.zeros(0, 1), ((2,), 1): Mat.zeros(0, 1)}
    data = cohomology(complex_from_cube(Cube((1, 2), spaces, maps)))
    assert data.dims == (0, 0, 0)


def test_cone_termwise_exactness():
    for seed in range(4):
        cube = _idempotent_cube(random.Random(20 + seed), 3, 4)
        cx = complex_from_cube(cube)
        for q in (1, 2, 3):
            z0, z1, _ = cone_faces(cube, q)
            cx0 = complex_from_cube(z0)
            cx1 = complex_from_cube(z1)
            for r in range(len(cx.terms)):
                d1 = cx1.terms[r - 1].total if 0 <= r - 1 < len(cx1.terms) else 0
                d0 = cx0.terms[r].total if r < len(cx0.terms) else 0
                assert cx.terms[r].total == d1 + d0
            e = sum((-1) ** r * t.total for r, t in enumerate(cx.terms))
            e0 = sum((-1) ** r * t.total for r, t in enumerate(cx0.terms))
            e1 = sum((-1) ** r * t.total for r, t in enumerate(cx1.terms))
            assert e == e0 - e1


def test_module_cube_s1(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    mc = module_cube(v, "0")
    cube = mc.cubes[("0",)]
    assert cube.spaces[()] == 2 and cube.spaces[(1,)] == 0
    assert mc.cubes[("1",)].spaces[()] == 1


def test_module_cube_interior_tuple(ahat1):
    # a module supported at the reflection vertex contributes only in
    # higher degree
    v = simple_at(ahat1, "0", {"0": 0, "1": 1})
    coh = module_cohomology(v, "0")
    assert coh[("0",)] == (0, 1)


def _outer_square(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": 0}, 0)
    y = simple_at(ahat1, "1", {"0": 1, "1": 0})
    return build_outer_tensor(params, [(2, y, YoungDiagram([2]))])


def test_h0_equals_functor(ahat1):
    v = _outer_square(ahat1)
    out = reflection_functor(v, "0")
    coh = module_cohomology(v, "0")
    for j, dims in coh.items():
        assert dims[0] == out.module.dim(j), j
        assert all(d == 0 for d in dims[1:]), (j, dims)


def test_euler_matches_functor_at_nu_zero(ahat1):
    v = _outer_square(ahat1)
    report = euler_characteristic(v, "0")
    per = report.per_tuple_dict()
    out = reflection_functor(v, "0")
    expected = {("1", "1"): 1, ("0", "1"): 2, ("1", "0"): 2, ("0", "0"): 4}
    for j, val in expected.items():
        assert per[j] == val
    assert sum(per.values()) == 9
    chars = report.character_dict()
    assert chars[(1, 1)] == Scalar.rational(9)
    for parts, val in chars.items():
        sigma = Perm.from_cycle_type(parts, 2)
        assert val == module_character(out.module, sigma), parts


def test_euler_zero_module(ahat1):
    params = make_params(ahat1, 1, {"0": 1, "1": 0})
    zero = WreathModule(params, {}, {}, {})
    report = euler_characteristic(zero, "0")
    assert not report.per_tuple


def test_empty_index_cube_is_degree_zero():
    # a cube over the empty index set is a single space in degree 0
    cube = Cube((), {(): 3}, {})
    data = cohomology(complex_from_cube(cube))
    assert data.dims == (3,)


def test_euler_equals_alternating_cohomology_at_nonzero_nu(ahat1):
    # independent of the parameters, the alternating sum of term
    # dimensions equals the alternating sum of cohomology dimensions
    from wreathq.modules import build_induced_zero_e
    params = make_params(ahat1, 2, {"0": 1, "1": Fraction(-1, 2)}, Fraction(1, 2))
    v = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    per = euler_characteristic(v, "0").per_tuple_dict()
    coh = module_cohomology(v, "0")
    for j, value in per.items():
        dims = coh.get(j, (0,))
        assert value == sum((-1) ** r * d for r, d in enumerate(dims)), j
