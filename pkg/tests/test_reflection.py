from fractions import Fraction

import pytest

from wreathq.cyclotomic import Scalar
from wreathq.errors import EdgeLoopError, NotGenericError
from wreathq.linalg import Mat, rank
from wreathq.modules import (
    Params, WreathModule, build_induced_zero_e, build_outer_tensor,
    check_intertwiner, direct_sum, graph_automorphism_transport,
    module_character, reorient_module, verify_relations,
)
from wreathq.quiver import Quiver, Weight, dual_reflection, simple_reflection, DimVector
from wreathq.reflection import (
    SinkCalculus, apply_functor_word, involution_witness, is_generic,
    is_generic_oracle, reflect_morphism, reflection_functor, sink_flips,
)
from wreathq.symmetric import Perm, YoungDiagram

from conftest import make_params, mat, simple_at


def sink_module(ahat1, dims=(1, 1), entries=None):
    """An n = 1 module on the sink-form quiver a,b: 1 -> 0 with given maps."""
    q = Quiver(["0", "1"], [("a", "1", "0"), ("b", "1", "0")])
    lam = entries.pop("lam") if entries and "lam" in entries else {"0": 1, "1": 0}
    params = make_params(q, 1, lam)
    support = {}
    if dims[0]:
        support[("0",)] = dims[0]
    if dims[1]:
        support[("1",)] = dims[1]
    return q, WreathModule(params, support, entries or {}, {})


def test_pi_mu_block_assembly():
    # one-dimensional spaces at both vertices; a, a*, b, b* act by scalars
    # alpha, alpha', beta, beta'; then pi = [alpha beta], mu = [alpha'; beta']
    q = Quiver(["0", "1"], [("a", "1", "0"), ("b", "1", "0")])
    alpha, alphap, beta, betap = Fraction(2), Fraction(3), Fraction(5), Fraction(-7)
    lam0 = alpha * alphap + beta * betap
    params = make_params(q, 1, {"0": lam0, "1": -lam0})
    m = WreathModule(params, {("0",): 1, ("1",): 1},
                     {("a", 1, ("1",)): mat([[alpha]]),
                      ("a*", 1, ("0",)): mat([[alphap]]),
                      ("b", 1, ("1",)): mat([[beta]]),
                      ("b*", 1, ("0",)): mat([[betap]])},
                     {})
    assert verify_relations(m).passed
    calc = SinkCalculus(m, "0")
    pi = calc.pi(("0",), (1,), 1)
    mu = calc.mu(("0",), (1,), 1)
    assert pi == mat([[alpha, beta]])
    assert mu == mat([[alphap], [betap]])
    # composition check: pi mu = lambda_0 on V_(0) (no other marked positions)
    assert pi @ mu == mat([[lam0]])


def test_pi_mu_empty_shapes():
    q, m = sink_module(None, dims=(0, 1))
    calc = SinkCalculus(m, "0")
    pi = calc.pi(("0",), (1,), 1)
    assert pi.rows == 0 and pi.cols == 2
    mu = calc.mu(("0",), (1,), 1)
    assert mu.rows == 2 and mu.cols == 0


def test_reflect_simple_at_one(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    out = reflection_functor(v, "0")
    w = out.module
    assert w.params.weight == Weight({"0": -1, "1": 2})
    assert w.support == {("0",): 2, ("1",): 1}
    assert verify_relations(w).passed
    # dimension vector matches the simple reflection s_0(eps_1) = (2, 1)
    alpha = simple_reflection(ahat1, "0", DimVector.unit("1"))
    assert w.dimension_vector() == alpha.as_dict()


def test_reflect_zero_module(ahat1):
    params = make_params(ahat1, 1, {"0": 1, "1": 0})
    zero = WreathModule(params, {}, {}, {})
    out = reflection_functor(zero, "0")
    assert out.module.support == {}


def test_reflect_kills_simple_at_sink(ahat1):
    # the one-dimensional module at the reflection vertex dies
    v = simple_at(ahat1, "0", {"0": 0, "1": 1})
    out = reflection_functor(v, "0")
    assert out.module.support == {}


def test_reflect_outer_tensor_dims(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": 0}, 0)
    y = simple_at(ahat1, "1", {"0": 1, "1": 0})
    v = build_outer_tensor(params, [(2, y, YoungDiagram([2]))])
    out = reflection_functor(v, "0")
    w = out.module
    assert w.support == {("1", "1"): 1, ("0", "1"): 2, ("1", "0"): 2, ("0", "0"): 4}
    assert verify_relations(w).passed
    assert w.params.weight == Weight({"0": -1, "1": 2})


def test_reflected_module_passes_at_nu_nonzero(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": Fraction(-1, 2)}, Fraction(1, 2))
    v = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    assert verify_relations(v).passed
    out = reflection_functor(v, "0")
    w = out.module
    assert verify_relations(w).passed
    assert w.params.weight == dual_reflection(ahat1, "0", params.weight)
    assert w.support == {("1", "1"): 1, ("0", "1"): 2, ("1", "0"): 2, ("0", "0"): 4}


def test_reflection_rejects_loops():
    q = Quiver(["0"], [("l", "0", "0")])
    params = make_params(q, 1, {"0": 1})
    m = WreathModule(params, {("0",): 1}, {}, {})
    with pytest.raises(EdgeLoopError):
        reflection_functor(m, "0")


def test_is_generic_examples(ahat1):
    assert not is_generic(make_params(ahat1, 3, {"0": 2, "1": 0}, 1), "0")
    res = is_generic(make_params(ahat1, 3, {"0": 2, "1": 0}, 1), "0")
    assert res.failing_p == 2 and res.failing_branch == "minus"
    assert is_generic(make_params(ahat1, 3, {"0": 2, "1": 0}, Fraction(1, 3)), "0")
    assert not is_generic(make_params(ahat1, 2, {"0": 0, "1": 1}, 5), "0")


def test_generic_oracle_agrees(ahat1):
    for lam0 in (0, 1, 2, Fraction(-3, 2)):
        for nu in (0, 1, Fraction(1, 2)):
            for n in (1, 2, 3):
                params = make_params(ahat1, n, {"0": lam0, "1": 0}, nu)
                assert bool(is_generic(params, "0")) == is_generic_oracle(params, "0")


def test_involution_simple(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    wit = involution_witness(v, "0")
    assert wit.verified
    assert wit.module.support == v.support
    assert wit.module.params.weight == v.params.weight


def test_involution_outer_tensor(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": 0}, 0)
    y = simple_at(ahat1, "1", {"0": 1, "1": 0})
    v = build_outer_tensor(params, [(2, y, YoungDiagram([2]))])
    wit = involution_witness(v, "0")
    assert wit.verified
    assert wit.module.support == v.support


def test_involution_nu_nonzero(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": Fraction(-1, 2)}, Fraction(1, 2))
    v = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    wit = involution_witness(v, "0")
    assert wit.verified


def test_involution_requires_generic(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": 0}, 1)
    v = build_induced_zero_e(params, [(YoungDiagram([1, 1]), "1")])
    with pytest.raises(NotGenericError):
        involution_witness(v, "0")


def test_word_empty_and_double(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    res = apply_functor_word(v, [])
    assert res.module.support == v.support
    res = apply_functor_word(v, ["0", "0"], require_generic=True)
    assert res.module.support == v.support
    assert res.module.params.weight == v.params.weight


def test_word_follows_simple_reflections(ahat1):
    # at nu = 0 the dimension vectors follow the Weyl orbit
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    res = apply_functor_word(v, ["0", "1"])
    expected = simple_reflection(ahat1, "1", simple_reflection(ahat1, "0", DimVector.unit("1")))
    assert res.module.dimension_vector() == expected.as_dict()
    # trace records the intermediate stage
    assert res.trace[0][2] == {("0",): 2, ("1",): 1}


def test_reflect_morphism_identity_and_zero(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    out = reflection_functor(v, "0")
    ident = {("1",): Mat.identity(1)}
    fid = reflect_morphism(v, v, ident, "0", out, out)
    for j, m in fid.items():
        assert m == Mat.identity(out.module.dim(j))
    fzero = reflect_morphism(v, v, {}, "0", out, out)
    assert not fzero  # zero morphism reflects to zero


def test_reflect_morphism_projection(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    vv = direct_sum(v, v)
    out = reflection_functor(vv, "0")
    proj = {("1",): mat([[1, 0], [0, 0]])}
    fproj = reflect_morphism(vv, vv, proj, "0", out, out)
    # functoriality: idempotent maps to idempotent of half rank
    for j, m in fproj.items():
        assert m @ m == m
        assert rank(m) * 2 == out.module.dim(j)


def test_reflect_morphism_respects_composition(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    vv = direct_sum(v, v)
    out = reflection_functor(vv, "0")
    f = {("1",): mat([[0, 1], [0, 0]])}
    g = {("1",): mat([[0, 0], [1, 0]])}
    rf = reflect_morphism(vv, vv, f, "0", out, out)
    rg = reflect_morphism(vv, vv, g, "0", out, out)
    fg = {("1",): f[("1",)] @ g[("1",)]}
    rfg = reflect_morphism(vv, vv, fg, "0", out, out)
    for j in rfg:
        assert rfg[j] == rf[j] @ rg[j]


def test_exactness_on_direct_sums(ahat1):
    params = make_params(ahat1, 2, {"0": 1, "1": Fraction(-1, 2)}, Fraction(1, 2))
    u = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    w = direct_sum(u, u)
    du = reflection_functor(u, "0").module.support
    dw = reflection_functor(w, "0").module.support
    assert dw == {j: 2 * d for j, d in du.items()}


def test_graph_automorphism_square(ahat1):
    # transport(F_{g(i)} V) and F_i(transport V) agree on the nose
    g = {"0": "1", "1": "0"}
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    path1 = graph_automorphism_transport(reflection_functor(v, "1").module, g)
    path2 = reflection_functor(graph_automorphism_transport(v, g), "0").module
    assert path1.params.weight == path2.params.weight
    assert path1.support == path2.support
    ident = {j: Mat.identity(path1.dim(j)) for j in path1.support}
    assert check_intertwiner(path1, path2, ident)


def test_h_zero_matches_euler_at_nu_zero(ahat1):
    # dim F_0(V) equals the alternating sum over the cube levels (nu = 0)
    params = make_params(ahat1, 2, {"0": 1, "1": 0}, 0)
    y = simple_at(ahat1, "1", {"0": 1, "1": 0})
    v = build_outer_tensor(params, [(2, y, YoungDiagram([2]))])
    out = reflection_functor(v, "0")
    calc = out.calculus
    import itertools as it
    for j in out.embeddings:
        delta = calc.delta(j)
        total = 0
        for k in range(len(delta) + 1):
            for d in it.combinations(delta, k):
                total += (-1) ** (len(delta) - k) * calc.space(j, d).total
        assert total == out.module.dim(j), j


def test_involution_zero_module(ahat1):
    params = make_params(ahat1, 1, {"0": 1, "1": 0})
    zero = WreathModule(params, {}, {}, {})
    wit = involution_witness(zero, "0")
    assert wit.verified and wit.module.support == {}


def test_reflection_over_cyclotomic_field(ahat1):
    # the whole pipeline runs inside Q(zeta_4): weight (z, 0), nu = 0
    z = Scalar.zeta(4)
    params = make_params(ahat1, 1, {"0": z, "1": Scalar.zero(4)}, Scalar.zero(4), order=4)
    from wreathq.modules import point_module
    v = point_module(params, "1")
    assert verify_relations(v).passed
    out = reflection_functor(v, "0")
    w = out.module
    assert w.support == {("0",): 2, ("1",): 1}
    assert w.params.weight[ "0"] == -z
    assert w.params.weight["1"] == 2 * z
    assert verify_relations(w).passed
    wit = involution_witness(v, "0")
    assert wit.verified


def test_pi_mu_wrappers_match_calculus(ahat1):
    v = simple_at(ahat1, "1", {"0": 1, "1": 0})
    from wreathq.reflection import mu_map, pi_map
    out = reflection_functor(v, "0")
    calc = out.calculus
    assert pi_map(v, "0", ("0",), (1,), 1) == calc.pi(("0",), (1,), 1)
    assert mu_map(v, "0", ("0",), (1,), 1) == calc.mu(("0",), (1,), 1)


def test_word_weyl_orbit_on_three_cycle(ahat2):
    # at nu = 0 the graded dimensions follow the composed simple
    # reflections; the three-cycle exercises edges away from the sink
    v = simple_at(ahat2, "1", {"0": 1, "1": 0, "2": 1})
    word = ["0", "2", "1", "0"]
    res = apply_functor_word(v, word)
    expected = DimVector.unit("1")
    for letter in word:
        expected = simple_reflection(ahat2, letter, expected)
    assert res.module.dimension_vector() == {k: v for k, v in expected.as_dict().items() if v}
    assert verify_relations(res.module).passed


def test_reflection_commutes_with_partial_reorientation(ahat1):
    # the functor is insensitive to the orientation the user supplies
    params = make_params(ahat1, 2, {"0": 1, "1": Fraction(-1, 2)}, Fraction(1, 2))
    from wreathq.modules import build_induced_zero_e
    from wreathq.symmetric import YoungDiagram
    v = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    flipped = reorient_module(v, ["a"])
    out_direct = reflection_functor(v, "0")
    out_flipped = reflection_functor(flipped, "0")
    assert out_direct.module.support == out_flipped.module.support
    assert out_direct.module.params.weight == out_flipped.module.params.weight
    assert verify_relations(out_flipped.module).passed
