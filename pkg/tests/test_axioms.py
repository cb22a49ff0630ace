
import pytest

from tpalg import (GF, QQ, AXIOMS, PROFILES, AlgebraBundle, BasisSpace, check_identity, check_profile, derivation_bracket, evaluate_identity, full_catalog,
                   gelfand_product, op_from_terms, passes, reverify, truncated_polynomial_algebra,
                   two_derivation_bracket)
from tpalg.axioms import ViolationWitness, get_axiom, profile_name


def bundle2(mul, bracket, field=QQ):
    return AlgebraBundle(BasisSpace.standard(2), field,
                         {"mul": op_from_terms("mul", 2, "symmetric", 2, mul, field),
                          "bracket": op_from_terms("bracket", 2, "alternating", 2, bracket, field)})


def test_nonabelian_d_transposed_leibniz(catalog):
    assert check_identity(catalog["nonabelian-d"].bundle, "transposed_leibniz").holds


def test_leibniz_witness_on_nonabelian_c(catalog):
    b = catalog["nonabelian-c"].bundle
    r = check_identity(b, "leibniz")
    assert not r.holds
    # the tuple (e1, e2, e2) is a genuine failure with left e2, right 2 e2
    (left, right), = evaluate_identity(b, "leibniz", (0, 1, 1))
    assert left == b.vector([0, 1]) and right == b.vector([0, 2])
    # the engine reports the lexicographically first failing tuple
    assert r.witness.indices == (0, 0, 1)
    assert reverify(b, r.witness)


def test_zero_bracket_satisfies_gi(catalog):
    for e in catalog.values():
        b = e.bundle.with_op(op_from_terms("bracket", 2, "alternating", 2, {}), "bracket")
        for g in ["gi1", "gi2", "gi3", "gi4", "gi5", "gi6"]:
            assert check_identity(b, g).holds


def test_profile_examples(catalog):
    assert all(check_profile(catalog["abelian-b"].bundle, "TransposedPoisson"))
    zero = bundle2({}, {})
    assert passes(zero, "Poisson") and passes(zero, "TransposedPoisson")
    A = truncated_polynomial_algebra(["x"], [3])
    novikov = A.with_op(gelfand_product(A.ops["mul"], A.maps["E_x"]), "circ")
    assert passes(novikov, "NovikovPoisson")


def test_profile_aliases():
    assert profile_name("transposed-poisson") == "TransposedPoisson"
    assert profile_name("TPA") == "TransposedPoisson"
    assert profile_name("tpa-3-lie") == "TPA3Lie"
    with pytest.raises(KeyError):
        profile_name("nope")


def test_binding_errors(catalog):
    b = catalog["nonabelian-b"].bundle
    with pytest.raises(KeyError):
        check_identity(b, "jacobi", {"bracket": "missing"})
    with pytest.raises(ValueError):
        check_identity(b, "jacobi", {"bracket": "mul"})  # not alternating
    with pytest.raises(ValueError):
        check_identity(b, "poisson_3lie", {"mu": "bracket"})  # arity 2 for a ternary role
    with pytest.raises(KeyError):
        check_identity(b, "no_such_axiom")


def test_prime_field_guards():
    b = bundle2({(0, 0): {1: 1}}, {(0, 1): {1: 1}}, GF(3))
    assert check_identity(b, "transposed_leibniz").holds
    A = truncated_polynomial_algebra(["x", "y"], [2, 2], GF(3))
    mu = op_from_terms("mu", 3, "alternating", 4, {}, GF(3))
    with pytest.raises(ValueError):
        check_identity(A.with_op(mu, "mu"), "transposed_3lie")  # factor 3 vanishes in GF(3)


def test_witness_requires_inequality():
    from tpalg import Element
    e = Element([1, 0])
    with pytest.raises(AssertionError):
        ViolationWitness("x", (0,), e, e)


def _bundles_for_sweeps():
    out = [e.bundle for e in full_catalog()]
    A = truncated_polynomial_algebra(["x"], [4])
    out.append(A.with_op(derivation_bracket(A.ops["mul"], A.maps["E_x"]), "bracket"))
    B = truncated_polynomial_algebra(["x", "y"], [2, 2])
    out.append(B.with_op(two_derivation_bracket(B.ops["mul"], B.maps["E_x"], B.maps["E_y"]), "bracket"))
    return out


@pytest.mark.parametrize("axiom", ["commutativity", "associativity", "jacobi", "leibniz", "transposed_leibniz",
                                   "gi1", "gi2", "gi3", "gi4", "gi5", "gi6", "inter0", "strong_poisson"])
def test_pruning_is_verdict_equivalent(axiom):
    for b in _bundles_for_sweeps():
        if "bracket" not in b.ops:
            continue
        a = check_identity(b, axiom)
        n = check_identity(b, axiom, prune=False)
        assert a.holds == n.holds
        if not a.holds:
            assert a.witness.indices == n.witness.indices
            assert a.tuples_checked <= n.tuples_checked


def test_witnesses_reverify():
    for b in _bundles_for_sweeps():
        if "bracket" not in b.ops:
            continue
        for ax in ["leibniz", "transposed_leibniz", "inter0", "gi5", "gi6"]:
            r = check_identity(b, ax)
            if not r.holds:
                assert reverify(b, r.witness)


def test_implications():
    for b in _bundles_for_sweeps():
        if "bracket" not in b.ops:
            continue
        if passes(b, "TransposedPoisson"):
            for g in ["gi1", "gi2", "gi3", "gi4", "gi5", "gi6"]:
                assert passes(b, g), g
        if passes(b, "Poisson") and passes(b, "strong_poisson"):
            assert passes(b, "gi2")
        both = passes(b, "Poisson") and passes(b, "TransposedPoisson")
        assert both == passes(b, "inter0")


def test_novikov_implies_prelie_poisson():
    for caps in ([3], [4], [2, 2]):
        names = ["x", "y"][:len(caps)]
        A = truncated_polynomial_algebra(names, caps)
        for m in A.maps.values():
            b = A.with_op(gelfand_product(A.ops["mul"], m), "circ")
            assert passes(b, "NovikovPoisson")
            assert passes(b, "PreLiePoisson")
            # Gelfand products are PreLie-Com, and PreLie-Com with np1 gives np2
            assert passes(b, "PreLieCom") and passes(b, "np1") and passes(b, "np2")


def test_every_profile_names_registered_axioms():
    for name, axioms in PROFILES.items():
        for ax in axioms:
            assert ax in AXIOMS
        assert get_axiom(axioms[0]).name == axioms[0]


def test_derivation_check(poly_xy):
    b = poly_xy
    assert check_identity(b, "derivation_of", {"op": "mul", "D": "E_x"}).holds
    assert check_identity(b, "commuting_maps", {"A": "E_x", "B": "E_y"}).holds
