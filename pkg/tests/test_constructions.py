import itertools

import pytest
import sympy

from tpalg import (GF, QQ, AlgebraBundle, BasisSpace, Element, LinearMap, PreconditionError, check_identity,
                   commutator_bracket, derivation_bracket, find_involutive_antimorphisms,
                   gelfand_product, hom_lie_structure, nlie_ladder_step, op_from_terms, passes, rescaled_bracket,
                   tensor_mixed, three_lie_from_derivation, three_lie_from_involution, three_lie_from_poisson,
                   truncated_polynomial_algebra, two_derivation_bracket, wedge_bracket)

X, Y, Z = sympy.symbols("x y z")


def poly_oracle(bundle, names, caps):
    """Map each basis label to a sympy monomial and back, truncating by the caps."""
    gens = sympy.symbols(names)
    mono = {lab: sympy.sympify(lab.replace("^", "**"), locals={n: g for n, g in zip(names, gens)})
            for lab in bundle.space.labels}

    def to_element(expr):
        expr = sympy.expand(expr)
        coeffs = [0] * bundle.dim
        for term, c in sympy.Poly(expr, *gens).terms() if expr != 0 else []:
            if all(e < cap for e, cap in zip(term, caps)):
                m = sympy.Mul(*[g ** e for g, e in zip(gens, term)])
                label = [lab for lab, v in mono.items() if v == m][0]
                coeffs[bundle.space.index(label)] = sympy.Rational(c)
        return Element([QQ(int(c.p)) / int(c.q) if c else 0 for c in map(sympy.Rational, coeffs)])

    return gens, mono, to_element


def euler(expr, g):
    return g * sympy.diff(expr, g)


def test_gelfand_and_commutator_on_x_cubed():
    A = truncated_polynomial_algebra(["x"], [3])
    (x,), mono, back = poly_oracle(A, ["x"], [3])
    circ = gelfand_product(A.ops["mul"], A.maps["E_x"])
    br = commutator_bracket(circ)
    for a, b in itertools.product(A.space.labels, repeat=2):
        u, v = A.element(a), A.element(b)
        assert circ(u, v) == back(mono[a] * euler(mono[b], x))
        assert br(u, v) == back(mono[a] * euler(mono[b], x) - mono[b] * euler(mono[a], x))
    assert passes(A.with_op(circ, "circ"), "NovikovPoisson")


def test_commutator_small_cases():
    sym = op_from_terms("circ", 2, "symmetric", 2, {(0, 0): {0: 1}, (0, 1): {1: 3}})
    assert commutator_bracket(sym).is_zero()
    circ = op_from_terms("circ", 2, "none", 2, {(0, 0): {0: 1}, (0, 1): {1: 1}})
    assert commutator_bracket(circ).table == {(0, 1): Element([0, 1])}
    with pytest.raises(ValueError):
        commutator_bracket(op_from_terms("t", 3, "none", 2, {}))


def test_gelfand_zero_map_and_bad_map():
    A = truncated_polynomial_algebra(["x"], [3])
    assert gelfand_product(A.ops["mul"], LinearMap.zero(3)).is_zero()
    not_derivation = LinearMap.identity(3)
    with pytest.raises(PreconditionError) as info:
        gelfand_product(A.ops["mul"], not_derivation)
    assert info.value.witness is not None
    assert info.value.witness.left != info.value.witness.right


def test_derivation_bracket_values():
    A = truncated_polynomial_algebra(["x"], [3])
    br = derivation_bracket(A.ops["mul"], A.maps["E_x"])
    one, x, x2 = (A.element(s) for s in ["1", "x", "x^2"])
    assert br(one, x) == x
    assert br(one, x2) == x2.scale(2)
    assert br(x, x2).is_zero()
    assert derivation_bracket(A.ops["mul"], LinearMap.zero(3)).is_zero()
    assert passes(A.with_op(br, "bracket"), "TransposedPoisson")


@pytest.mark.parametrize("caps", [[2], [3], [5], [2, 2], [3, 2]])
def test_derivation_bracket_is_commutator_of_gelfand(caps):
    A = truncated_polynomial_algebra(["x", "y"][:len(caps)], caps)
    for m in A.maps.values():
        assert derivation_bracket(A.ops["mul"], m).same_constants(
            commutator_bracket(gelfand_product(A.ops["mul"], m)))


def test_two_derivation_bracket(poly_xy):
    mul, Ex, Ey = poly_xy.ops["mul"], poly_xy.maps["E_x"], poly_xy.maps["E_y"]
    br = two_derivation_bracket(mul, Ex, Ey)
    assert br.table == {(1, 2): poly_xy.element("x*y")}
    assert two_derivation_bracket(mul, Ex, Ex).is_zero()
    b = poly_xy.with_op(br, "bracket")
    assert passes(b, "Poisson") and passes(b, "strong_poisson")
    # a derivation not commuting with E_x: D(x) = x*y (nilpotent), D(y) = 0
    D = LinearMap.from_images([Element([0] * 4), poly_xy.element("x*y"), Element([0] * 4), Element([0] * 4)])
    assert check_identity(poly_xy.with_map(D, "D"), "derivation_of", {"op": "mul"}).holds
    with pytest.raises(PreconditionError):
        two_derivation_bracket(mul, Ey, D)


def test_rescaled_bracket_on_nonabelian_c(catalog):
    b = catalog["nonabelian-c"].bundle
    out = rescaled_bracket(b.ops["mul"], b.ops["bracket"], b.element("e2"))
    assert out(b.element("e1"), b.element("e2")) == b.element("e2")


def test_rescaled_bracket_formula_value(catalog):
    # h·[e1,e2] with h = e2 evaluated directly: e2·e2 = e2
    b = catalog["nonabelian-c"].bundle
    assert b.ops["mul"](b.element("e2"), b.ops["bracket"](b.element("e1"), b.element("e2"))) == b.element("e2")


def test_rescaled_bracket_preserves_tpa(catalog):
    for e in catalog.values():
        if not passes(e.bundle, "TransposedPoisson"):
            continue
        mul, br = e.bundle.ops["mul"], e.bundle.ops["bracket"]
        assert rescaled_bracket(mul, br, Element([0, 0])).is_zero()
        for h in range(2):
            out = rescaled_bracket(mul, br, h)
            assert passes(e.bundle.with_op(out, "bracket"), "TransposedPoisson")


def test_hom_lie(catalog):
    d = catalog["nonabelian-d"].bundle
    phi, reports = hom_lie_structure(d.ops["mul"], d.ops["bracket"], d.element("e1"))
    assert phi == LinearMap.identity(2)  # lambda = 1
    assert reports["hom_jacobi"].holds
    phi0, reports0 = hom_lie_structure(d.ops["mul"], d.ops["bracket"], Element([0, 0]))
    assert phi0.is_zero()
    assert all(r.holds for r in reports0.values())
    assert "hom_multiplicative" in reports0  # 0 is idempotent


def test_hom_lie_lambda_scaling():
    from tpalg import nonabelian_d
    e = nonabelian_d(3)
    phi, _ = hom_lie_structure(e.bundle.ops["mul"], e.bundle.ops["bracket"], e.bundle.element("e1"))
    assert phi == LinearMap.identity(2).scale(3)


def test_tensor_products(catalog):
    A, B = catalog["nonabelian-b"].bundle, catalog["abelian-c"].bundle
    T = tensor_mixed(A, B)
    assert T.dim == 4 and T.space.labels[1] == "e1@e2"
    assert passes(T, "TransposedPoisson")
    P = tensor_mixed(catalog["abelian-b"].bundle, catalog["nonabelian-a"].bundle)
    assert passes(P, "Poisson")
    Z = tensor_mixed(A, catalog["abelian-a"].bundle)
    assert Z.ops["bracket"].is_zero()
    sym = B.with_op(op_from_terms("bracket", 2, "symmetric", 2, {}), "bracket")
    with pytest.raises(ValueError):
        tensor_mixed(A, sym)


def test_tensor_of_prelie_pairs():
    A = truncated_polynomial_algebra(["x"], [2])
    B = truncated_polynomial_algebra(["y"], [3])
    a = A.with_op(gelfand_product(A.ops["mul"], A.maps["E_x"]), "circ")
    b = B.with_op(gelfand_product(B.ops["mul"], B.maps["E_y"]), "circ")
    T = tensor_mixed(a, b, op="circ")
    assert T.dim == 6
    assert passes(T, "PreLiePoisson")


def test_three_lie_from_derivation(poly_xy):
    mul = poly_xy.ops["mul"]
    br = derivation_bracket(mul, poly_xy.maps["E_x"])
    mu = three_lie_from_derivation(mul, br, poly_xy.maps["E_y"])
    one, x, y = (poly_xy.element(s) for s in ["1", "x", "y"])
    assert mu(one, x, y) == poly_xy.element("x*y")
    assert three_lie_from_derivation(mul, br, LinearMap.zero(4)).is_zero()
    b = poly_xy.with_op(br, "bracket").with_op(mu, "mu")
    assert check_identity(b, "aux_identity", {"D": "E_y"}).holds
    assert passes(b, "TPA3Lie")


def test_three_lie_from_derivation_many(poly_xyz):
    mul = poly_xyz.ops["mul"]
    E = [poly_xyz.maps[f"E_{v}"] for v in "xyz"]
    for D1, D in itertools.permutations(E, 2):
        br = derivation_bracket(mul, D1)
        mu = three_lie_from_derivation(mul, br, D)
        assert passes(poly_xyz.with_op(mu, "mu"), "TPA3Lie")


def test_three_lie_from_derivation_checks(poly_xy):
    mul = poly_xy.ops["mul"]
    br = two_derivation_bracket(mul, poly_xy.maps["E_x"], poly_xy.maps["E_y"])
    with pytest.raises(PreconditionError):  # strong Poisson, not transposed Poisson
        three_lie_from_derivation(mul, br, poly_xy.maps["E_x"])
    mu = three_lie_from_derivation(mul, br, poly_xy.maps["E_x"], base="StrongPoisson")
    assert mu.is_zero()


def test_three_lie_from_involution_dim2(catalog):
    b = catalog["nonabelian-b"].bundle
    f = LinearMap([[-1, 0], [0, 1]])
    op, reports = three_lie_from_involution(b.ops["mul"], b.ops["bracket"], f)
    assert op.is_zero() and reports["fundamental_identity"].holds
    with pytest.raises(PreconditionError):
        three_lie_from_involution(b.ops["mul"], b.ops["bracket"], LinearMap.identity(2))
    z = catalog["abelian-c"].bundle
    op, _ = three_lie_from_involution(z.ops["mul"], z.ops["bracket"], LinearMap.identity(2))
    assert op.is_zero()


def test_three_lie_from_involution_dim3_search():
    F = GF(5)
    mul = op_from_terms("mul", 2, "symmetric", 3, {(0, 0): {1: 1}, (2, 2): {2: 1}}, F)
    br = op_from_terms("bracket", 2, "alternating", 3, {(0, 1): {1: 1}}, F)
    b = AlgebraBundle(BasisSpace.standard(3), F, {"mul": mul, "bracket": br})
    assert passes(b, "TransposedPoisson")
    rep = find_involutive_antimorphisms(b)
    assert rep.hits
    for f in rep.hits:
        op, reports = three_lie_from_involution(mul, br, f)
        assert reports["fundamental_identity"].holds
        assert ("transposed_3lie" in reports) == reports["const3_extra"].holds


def test_three_lie_from_poisson(poly_xy):
    mul = poly_xy.ops["mul"]
    br = two_derivation_bracket(mul, poly_xy.maps["E_x"], poly_xy.maps["E_y"])
    mu = three_lie_from_poisson(mul, br)
    one, x, y = (poly_xy.element(s) for s in ["1", "x", "y"])
    assert mu(one, x, y) == poly_xy.element("x*y")
    b = poly_xy.with_op(mu, "mu")
    for ax in ["fundamental_identity", "strong_3", "transposed_3lie"]:
        assert check_identity(b, ax).holds
    (left, right), = __import__("tpalg").evaluate_identity(b, "poisson_3lie", (1, 2, 0, 0))
    assert left == poly_xy.element("x*y") and right == poly_xy.element("x*y").scale(2)
    assert three_lie_from_poisson(mul, op_from_terms("b", 2, "alternating", 4, {})).is_zero()
    with pytest.raises(PreconditionError):
        three_lie_from_poisson(mul, derivation_bracket(mul, poly_xy.maps["E_x"]))


def test_ladder_step_matches_three_lie(poly_xy):
    mul = poly_xy.ops["mul"]
    br = derivation_bracket(mul, poly_xy.maps["E_x"])
    step = nlie_ladder_step(mul, br, poly_xy.maps["E_y"])
    assert step.same_constants(three_lie_from_derivation(mul, br, poly_xy.maps["E_y"]))
    assert nlie_ladder_step(mul, br, LinearMap.zero(4)).is_zero()


def test_ladder_step_to_four(poly_xyz):
    mul = poly_xyz.ops["mul"]
    Ex, Ey, Ez = (poly_xyz.maps[f"E_{v}"] for v in "xyz")
    mu3 = wedge_bracket([LinearMap.identity(8), Ex, Ey], mul)
    mu4 = nlie_ladder_step(mul, mu3, Ez)
    assert mu4.arity == 4
    b = poly_xyz.with_op(mu4, "mu")
    fi = check_identity(b, "fundamental_identity")
    tr = check_identity(b, "transposed_nlie")
    # evidence only: record the verdict and re-verify any witness
    for r in (fi, tr):
        if not r.holds:
            assert __import__("tpalg").reverify(b, r.witness)
    with pytest.raises(ValueError):
        nlie_ladder_step(mul, mu4, Ez, max_arity=4)
    with pytest.raises(ValueError):
        nlie_ladder_step(mul, mu3, Ez, max_dim=4)


def test_wedge(poly_xy, poly_xyz):
    mul, Ex, Ey = poly_xy.ops["mul"], poly_xy.maps["E_x"], poly_xy.maps["E_y"]
    w = wedge_bracket([LinearMap.identity(4), Ex, Ey], mul)
    assert w.same_constants(three_lie_from_derivation(mul, derivation_bracket(mul, Ex), Ey))
    assert w.same_constants(three_lie_from_poisson(mul, two_derivation_bracket(mul, Ex, Ey)))
    assert wedge_bracket([Ex, Ex, Ey], mul).is_zero()
    E = [poly_xyz.maps[f"E_{v}"] for v in "xyz"]
    w3 = wedge_bracket(E, poly_xyz.ops["mul"])
    assert not w3.is_zero()
    assert check_identity(poly_xyz.with_op(w3, "mu"), "fundamental_identity").holds
    with pytest.raises(PreconditionError):
        wedge_bracket([LinearMap.identity(4), LinearMap([[1, 0, 0, 0]] * 4)], mul)


def test_novikov_pipeline_gives_tpa():
    for caps in ([3], [4], [2, 2], [3, 2]):
        A = truncated_polynomial_algebra(["x", "y"][:len(caps)], caps)
        for m in A.maps.values():
            circ = gelfand_product(A.ops["mul"], m)
            b = A.with_op(circ, "circ")
            if passes(b, "NovikovPoisson") or passes(b, "PreLiePoisson"):
                assert passes(A.with_op(commutator_bracket(circ), "bracket"), "TransposedPoisson")


def test_tensor_preserves_commutative_associative(catalog):
    for a, b in itertools.product(["abelian-b", "abelian-e", "nonabelian-b"], repeat=2):
        T = tensor_mixed(catalog[a].bundle, catalog[b].bundle)
        assert passes(T, "commutativity") and passes(T, "associativity")
