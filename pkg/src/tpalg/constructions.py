"""Constructions of new operations from old ones.

Each construction checks its hypotheses first (exhaustively, via the axiom
engine) and raises :class:`PreconditionError` carrying the failing report,
instead of silently producing an operation that the theory says nothing
about.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .axioms import CheckReport, check_identity, check_profile
from .core import (AlgebraBundle, BasisSpace, Element, LinearMap, MultiLinearOp, _perm_sign,
                   element_sum, op_from_function)


class PreconditionError(ValueError):
    def __init__(self, message: str, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report

    @property
    def witness(self):
        return self.report.witness if self.report is not None else None


def _scratch(ops: dict, maps: dict | None = None) -> AlgebraBundle:
    some = next(iter(ops.values()))
    return AlgebraBundle(BasisSpace.standard(some.dim), some.field, ops, maps or {})


def _require(bundle: AlgebraBundle, what: str, binding=None, label: str = ""):
    if what in ("derivation_of", "endomorphism_of", "involution", "anti", "commuting_maps"):
        reports = [check_identity(bundle, what, binding)]
    else:
        reports = check_profile(bundle, what, binding)
    for r in reports:
        if not r.holds:
            raise PreconditionError(f"{label or what}: {r.axiom} fails at {r.witness.labels}", r)


def _require_derivation(mul: MultiLinearOp, D: LinearMap, extra: MultiLinearOp | None = None):
    ops = {"mul": mul}
    if extra is not None:
        ops["other"] = extra
    b = _scratch(ops, {"D": D})
    _require(b, "derivation_of", {"op": "mul", "D": "D"}, "derivation of the product")
    if extra is not None:
        _require(b, "derivation_of", {"op": "other", "D": "D"}, f"derivation of {extra.name}")


def _check_dims(*objs):
    dims = {o.dim for o in objs}
    fields = {o.field for o in objs}
    if len(dims) != 1 or len(fields) != 1:
        raise ValueError("all inputs must live on the same space and field")


def _binary(op: MultiLinearOp, what: str):
    if op.arity != 2:
        raise ValueError(f"{what} must be bilinear, {op.name} has arity {op.arity}")


def commutator_bracket(circ: MultiLinearOp, name: str = "bracket") -> MultiLinearOp:
    """[x,y] = x∘y − y∘x."""
    _binary(circ, "the product")
    return op_from_function(name, 2, "alternating", circ.dim, circ.field,
                            lambda x, y: circ(x, y) - circ(y, x))


def gelfand_product(mul: MultiLinearOp, D: LinearMap, name: str = "circ") -> MultiLinearOp:
    """x∘y = x·D(y); a Novikov product when D derives the commutative product."""
    _binary(mul, "the product")
    _check_dims(mul, D)
    _require_derivation(mul, D)
    return op_from_function(name, 2, "none", mul.dim, mul.field, lambda x, y: mul(x, D(y)))


def derivation_bracket(mul: MultiLinearOp, D: LinearMap, name: str = "bracket") -> MultiLinearOp:
    """[x,y] = x·D(y) − D(x)·y."""
    _binary(mul, "the product")
    _check_dims(mul, D)
    _require_derivation(mul, D)
    return op_from_function(name, 2, "alternating", mul.dim, mul.field,
                            lambda x, y: mul(x, D(y)) - mul(D(x), y))


def two_derivation_bracket(mul: MultiLinearOp, D1: LinearMap, D2: LinearMap,
                           name: str = "bracket") -> MultiLinearOp:
    """[x,y] = D1(x)·D2(y) − D1(y)·D2(x) for commuting derivations D1, D2."""
    _binary(mul, "the product")
    _check_dims(mul, D1, D2)
    _require_derivation(mul, D1)
    _require_derivation(mul, D2)
    b = _scratch({"mul": mul}, {"A": D1, "B": D2})
    _require(b, "commuting_maps", None, "D1 and D2 must commute")
    return op_from_function(name, 2, "alternating", mul.dim, mul.field,
                            lambda x, y: mul(D1(x), D2(y)) - mul(D1(y), D2(x)))


def _as_element(mul: MultiLinearOp, h) -> Element:
    if isinstance(h, Element):
        return h
    if isinstance(h, int):
        return Element.basis(h, mul.dim, mul.field)
    return Element(h, mul.field)


def rescaled_bracket(mul: MultiLinearOp, bracket: MultiLinearOp, h, name: str = "bracket"):
    """[x,y]_h = h·[x,y]."""
    _check_dims(mul, bracket)
    _require(_scratch({"mul": mul, "bracket": bracket}), "TransposedPoisson")
    h = _as_element(mul, h)
    return op_from_function(name, 2, "alternating", mul.dim, mul.field,
                            lambda x, y: mul(h, bracket(x, y)))


def multiplication_map(mul: MultiLinearOp, h, name: str = "phi") -> LinearMap:
    h = _as_element(mul, h)
    d = mul.dim
    return LinearMap.from_images([mul(h, Element.basis(j, d, mul.field)) for j in range(d)],
                                 mul.field, name)


def hom_lie_structure(mul: MultiLinearOp, bracket: MultiLinearOp, h):
    """φ_h(x) = h·x together with the Hom-Lie reports.

    Returns ``(phi, reports)`` where ``reports`` maps ``hom_jacobi``,
    ``varphi2`` and, when φ_h² = φ_h, ``hom_multiplicative`` to their
    check reports.
    """
    _check_dims(mul, bracket)
    _require(_scratch({"mul": mul, "bracket": bracket}), "TransposedPoisson")
    phi = multiplication_map(mul, h)
    b = _scratch({"mul": mul, "bracket": bracket}, {"phi": phi})
    reports = {name: check_identity(b, name) for name in ("hom_jacobi", "varphi2")}
    if phi.compose(phi) == phi:
        reports["hom_multiplicative"] = check_identity(b, "hom_multiplicative")
    return phi, reports


def tensor_mixed(A: AlgebraBundle, B: AlgebraBundle, mul: str = "mul", op: str = "bracket",
                 op_b: str | None = None) -> AlgebraBundle:
    """Tensor product with (x1⊗x2)(y1⊗y2) = x1y1⊗x2y2 and the mixed paired op.

    (x1⊗x2)*(y1⊗y2) = (x1*y1)⊗(x2·y2) + (x1·y1)⊗(x2*y2).
    """
    op_b = op_b or op
    mA, mB, oA, oB = A.ops[mul], B.ops[mul], A.ops[op], B.ops[op_b]
    for o in (mA, mB, oA, oB):
        _binary(o, o.name)
    if oA.symmetry != oB.symmetry or oA.symmetry == "symmetric":
        raise ValueError("paired ops must both be alternating or both untagged")
    if A.field != B.field:
        raise ValueError("tensor factors must share a field")
    field = A.field
    dA, dB = A.dim, B.dim
    d = dA * dB
    labels = tuple(f"{a}@{b}" for a in A.space.labels for b in B.space.labels)

    def tensor(u: Element, v: Element) -> Element:
        coeffs = [field.zero] * d
        for i, a in u.support():
            for j, b in v.support():
                coeffs[i * dB + j] = a * b
        return Element._raw(tuple(coeffs), field)

    prod, paired = {}, {}
    sym_m = "symmetric" if mA.symmetry == mB.symmetry == "symmetric" else "none"
    for (i1, i2), (j1, j2) in itertools.product(itertools.product(range(dA), range(dB)), repeat=2):
        key = (i1 * dB + i2, j1 * dB + j2)
        xy1, xy2 = mA.basis_value((i1, j1)), mB.basis_value((i2, j2))
        p = tensor(xy1, xy2)
        if not p.is_zero():
            prod[key] = p
        q = tensor(oA.basis_value((i1, j1)), xy2) + tensor(xy1, oB.basis_value((i2, j2)))
        if not q.is_zero():
            paired[key] = q
    ops = {mul: MultiLinearOp(mul, 2, sym_m, prod, d, field),
           op: MultiLinearOp(op, 2, oA.symmetry, paired, d, field)}
    meta = {"construction": "tensor", "left": A.metadata.get("id", ""),
            "right": B.metadata.get("id", "")}
    return AlgebraBundle(BasisSpace(labels), field, ops, {}, meta)


def _ternary_from(mul, bracket, g, name):
    return op_from_function(
        name, 3, "alternating", mul.dim, mul.field,
        lambda x, y, z: mul(g(x), bracket(y, z)) + mul(g(y), bracket(z, x)) + mul(g(z), bracket(x, y)))


def three_lie_from_derivation(mul: MultiLinearOp, bracket: MultiLinearOp, D: LinearMap,
                              name: str = "mu", base: str = "TransposedPoisson") -> MultiLinearOp:
    """[x,y,z] = D(x)[y,z] + D(y)[z,x] + D(z)[x,y].

    ``base`` is the profile the pair (mul, bracket) must satisfy: a transposed
    Poisson algebra by default, or ``"StrongPoisson"`` for the strong Poisson
    variant of the same formula.
    """
    _check_dims(mul, bracket, D)
    _require(_scratch({"mul": mul, "bracket": bracket}), base)
    _require_derivation(mul, D, bracket)
    return _ternary_from(mul, bracket, D, name)


def three_lie_from_involution(mul: MultiLinearOp, bracket: MultiLinearOp, f: LinearMap,
                              name: str = "mu"):
    """[x,y,z] = f(x)[y,z] + f(y)[z,x] + f(z)[x,y] for an involutive anti-morphism f.

    Returns ``(op, reports)``; ``reports`` always holds the fundamental
    identity and the extra condition, and ``transposed_3lie`` only when the
    extra condition holds.
    """
    _check_dims(mul, bracket, f)
    b = _scratch({"mul": mul, "bracket": bracket}, {"f": f})
    _require(b, "TransposedPoisson")
    _require(b, "involution", None, "f must be an involution")
    _require(b, "endomorphism_of", {"op": "mul"}, "f must be an endomorphism of the product")
    _require(b, "anti", None, "f must reverse the bracket")
    op = _ternary_from(mul, bracket, f, name)
    out = b.with_op(op, "mu")
    reports = {"fundamental_identity": check_identity(out, "fundamental_identity"),
               "const3_extra": check_identity(out, "const3_extra")}
    if reports["const3_extra"].holds:
        reports["transposed_3lie"] = check_identity(out, "transposed_3lie")
    return op, reports


def three_lie_from_poisson(mul: MultiLinearOp, bracket: MultiLinearOp, name: str = "mu"):
    """[x,y,z] = x[y,z] + y[z,x] + z[x,y] over a Poisson algebra."""
    _check_dims(mul, bracket)
    _require(_scratch({"mul": mul, "bracket": bracket}), "Poisson")
    return _ternary_from(mul, bracket, lambda v: v, name)


def nlie_ladder_step(mul: MultiLinearOp, mu: MultiLinearOp, D: LinearMap, name: str = "mu",
                     max_arity: int = 5, max_dim: int = 16) -> MultiLinearOp:
    """μ_{n+1}(x_0..x_n) = Σ_i (−1)^i D(x_i)·μ_n(x_0..x̂_i..x_n)."""
    _check_dims(mul, mu, D)
    n = mu.arity
    if mu.symmetry != "alternating" or n < 2:
        raise ValueError("the n-ary bracket must be alternating with arity >= 2")
    if n + 1 > max_arity:
        raise ValueError(f"arity {n + 1} exceeds the cap {max_arity}")
    if mul.dim > max_dim:
        raise ValueError(f"dimension {mul.dim} exceeds the cap {max_dim}")
    b = _scratch({"mul": mul, "mu": mu}, {"D": D})
    _require(b, "TPAnLie")
    _require(b, "derivation_of", {"op": "mul"}, "derivation of the product")
    _require(b, "derivation_of", {"op": "mu"}, "derivation of the n-ary bracket")

    def step(*xs):
        terms = []
        for i in range(n + 1):
            t = mul(D(xs[i]), mu(*(xs[:i] + xs[i + 1:])))
            terms.append(t if i % 2 == 0 else -t)
        return element_sum(terms, mul.dim, mul.field)

    return op_from_function(name, n + 1, "alternating", mul.dim, mul.field, step)


def _is_identity(m: LinearMap) -> bool:
    return m == LinearMap.identity(m.dim, m.field)


def wedge_bracket(maps: Sequence[LinearMap], mul: MultiLinearOp, name: str = "mu") -> MultiLinearOp:
    """Determinant bracket det[maps_i(x_j)], expanded with the product."""
    n = len(maps)
    if n < 1:
        raise ValueError("need at least one map")
    _check_dims(mul, *maps)
    non_id = [m for m in maps if not _is_identity(m)]
    for m in non_id:
        _require_derivation(mul, m)
    for a, b in itertools.combinations(non_id, 2):
        _require(_scratch({"mul": mul}, {"A": a, "B": b}), "commuting_maps", None,
                 "wedge maps must commute")
    perms = [(p, _perm_sign(p)) for p in itertools.permutations(range(n))]

    def det(*xs):
        terms = []
        for p, sign in perms:
            t = maps[0](xs[p[0]])
            for i in range(1, n):
                t = mul(t, maps[i](xs[p[i]]))
            terms.append(t if sign > 0 else -t)
        return element_sum(terms, mul.dim, mul.field)

    return op_from_function(name, n, "alternating", mul.dim, mul.field, det)
