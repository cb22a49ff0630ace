"""Concrete small algebras: the 2-dimensional lists, derivation-induced
examples, a pre-Lie Poisson example and truncated polynomial algebras.

Every entry verifies its claimed profiles when built.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .axioms import check_profile
from .core import AlgebraBundle, BasisSpace, Element, LinearMap, MultiLinearOp, op_from_terms
from .fields import QQ, Field
from .linsolve import joint_derivation_space, rank


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    bundle: AlgebraBundle
    claimed_profiles: tuple = ()
    parameters: Mapping[str, object] = dc_field(default_factory=dict)
    description: str = ""
    extras: Mapping[str, object] = dc_field(default_factory=dict)

    def verify(self) -> list:
        """Reports for every claimed profile; raises if any fails."""
        out = []
        for prof in self.claimed_profiles:
            reports = check_profile(self.bundle, prof)
            bad = [r for r in reports if not r.holds]
            if bad:
                raise AssertionError(f"{self.id}: claimed {prof} but {bad[0].axiom} fails")
            out.extend(reports)
        return out


def _entry(id, mul, bracket, field, profiles, params=None, description="", maps=None,
           extras=None, verify=True):
    d = 2
    ops = {"mul": op_from_terms("mul", 2, "symmetric", d, mul, field),
           "bracket": op_from_terms("bracket", 2, "alternating", d, bracket, field)}
    meta = {"id": id}
    meta.update({k: field.format(field(v)) for k, v in (params or {}).items()})
    bundle = AlgebraBundle(BasisSpace.standard(d), field, ops, maps or {}, meta)
    e = CatalogEntry(id, bundle, tuple(profiles), dict(params or {}), description, dict(extras or {}))
    if verify:
        e.verify()
    return e


_ABELIAN = [
    ("abelian-a", {}, "zero product"),
    ("abelian-b", {(0, 0): {0: 1}, (1, 1): {1: 1}}, "two orthogonal idempotents"),
    ("abelian-c", {(0, 0): {0: 1}, (0, 1): {1: 1}}, "unit e1"),
    ("abelian-d", {(0, 0): {0: 1}}, "one idempotent"),
    ("abelian-e", {(0, 0): {1: 1}}, "e1 squares to e2"),
]


def nonabelian_d(lam=1, field: Field = QQ, verify: bool = True) -> CatalogEntry:
    lam = field(lam)
    if not lam:
        raise ValueError("lambda must be nonzero")
    return _entry("nonabelian-d", {(0, 0): {0: lam}, (0, 1): {1: lam}}, {(0, 1): {1: 1}}, field,
                  ["TransposedPoisson"], {"lambda": lam}, "scaled unit e1, [e1,e2]=e2",
                  verify=verify)


def catalog_2d_transposed(lam=1, field: Field = QQ, verify: bool = True) -> list:
    """Both 2-dimensional lists: five with zero bracket, four with [e1,e2]=e2."""
    out = []
    for id, mul, desc in _ABELIAN:
        profiles = ["TransposedPoisson", "Poisson"]
        out.append(_entry(id, mul, {}, field, profiles, description=desc, verify=verify))
    br = {(0, 1): {1: 1}}
    out.append(_entry("nonabelian-a", {}, br, field, ["TransposedPoisson", "Poisson"],
                      description="zero product, [e1,e2]=e2", verify=verify))
    out.append(_entry("nonabelian-b", {(0, 0): {1: 1}}, br, field, ["TransposedPoisson"],
                      description="e1 squares to e2, [e1,e2]=e2", verify=verify))
    # Listed as transposed Poisson, but z=e1, x=e1, y=e2 gives 2e1 on the left and 0
    # on the right of the transposed Leibniz rule.  Kept as listed, claim not verified.
    out.append(_entry("nonabelian-c", {(0, 1): {0: 1}, (1, 1): {1: 1}}, br, field,
                      [], description="unit e2, [e1,e2]=e2", verify=verify,
                      extras={"listed_profiles": ("TransposedPoisson",)}))
    out.append(nonabelian_d(lam, field, verify))
    return out


def _matrix(rows, field):
    return LinearMap(rows, field)


def catalog_2d_derivation_induced(a=1, b=1, field: Field = QQ, verify: bool = True) -> list:
    """Five commutative products with their derivation families and brackets.

    ``extras["derivation_family"]`` holds basis matrices of the listed family
    and ``extras["der_dimension"]`` its dimension.  Entry 5 stores the stated
    bracket ``[e1,e2] = b e2`` alongside the family member ``D``; note that
    ``x·D(y) − D(x)·y`` for that ``D`` is zero (see tests).
    """
    a, b = field(a), field(b)
    specs = [
        ("der-1", {}, {}, [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]],
         [[0, 0], [0, 0]], {}),
        ("der-2", {(0, 0): {0: 1}, (1, 1): {1: 1}}, {}, [], [[0, 0], [0, 0]], {}),
        ("der-3", {(0, 0): {0: 1}}, {}, [[[0, 0], [0, 1]]], [[0, 0], [0, a]], {"a": a}),
        ("der-4", {(0, 0): {0: 1}, (0, 1): {1: 1}}, {(0, 1): {1: a}}, [[[0, 0], [0, 1]]],
         [[0, 0], [0, a]], {"a": a}),
        ("der-5", {(0, 0): {1: 1}}, {(0, 1): {1: b}}, [[[1, 0], [0, 2]], [[0, 0], [1, 0]]],
         [[a, 0], [b, 2 * a]], {"a": a, "b": b}),
    ]
    out = []
    for id, mul, br, family, D, params in specs:
        fam = [_matrix(m, field) for m in family]
        out.append(_entry(id, mul, br, field, ["TransposedPoisson"], params,
                          "commutative product with its induced bracket",
                          maps={"D": _matrix(D, field)},
                          extras={"derivation_family": fam, "der_dimension": len(fam)},
                          verify=verify))
    return out


def prelie_poisson_2d_example(a=1, field: Field = QQ, verify: bool = True) -> CatalogEntry:
    """Pre-Lie product e1∘e1=e1, e1∘e2=e2 with the compatible product e1·e1=a e2."""
    a = field(a)
    mul = op_from_terms("mul", 2, "symmetric", 2, {(0, 0): {1: a}}, field)
    circ = op_from_terms("circ", 2, "none", 2, {(0, 0): {0: 1}, (0, 1): {1: 1}}, field)
    bundle = AlgebraBundle(BasisSpace.standard(2), field, {"mul": mul, "circ": circ}, {},
                           {"id": "prelie-poisson", "a": field.format(a)})
    # Listed as pre-Lie Poisson, but (e1·e1)∘e1 = 0 while e1·(e1∘e1) = a e2, so np1
    # fails for a != 0.  The opposite ∘ satisfies np1 but is then Novikov.
    e = CatalogEntry("prelie-poisson", bundle, (), {"a": a},
                     "pre-Lie product that is not Novikov, with a commutative product",
                     {"listed_profiles": ("PreLiePoisson",)})
    if verify:
        e.verify()
    return e


def full_catalog(field: Field = QQ) -> list:
    return (catalog_2d_transposed(field=field) + catalog_2d_derivation_induced(field=field)
            + [prelie_poisson_2d_example(field=field)])


def catalog_entry(id: str, field: Field = QQ) -> CatalogEntry:
    for e in full_catalog(field):
        if e.id == id:
            return e
    raise KeyError(f"no catalog entry {id!r}")


# -- truncated polynomial algebras -------------------------------------------------

def _monomial_label(vars, exps) -> str:
    parts = []
    for v, k in zip(vars, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"


def truncated_polynomial_algebra(vars: Sequence[str], caps: Sequence[int] | int,
                                 field: Field = QQ) -> AlgebraBundle:
    """k[vars] modulo x_i^cap_i, with the Euler derivations E_v = v ∂_v as maps.

    Monomials are ordered by total degree, then by exponent vector
    descending, so k[x,y]/(x², y²) has basis 1, x, y, x*y.
    """
    vars = list(vars)
    if not vars:
        raise ValueError("need at least one variable")
    if isinstance(caps, int):
        caps = [caps] * len(vars)
    caps = list(caps)
    if len(caps) != len(vars) or any(c < 2 for c in caps):
        raise ValueError("one cap >= 2 per variable")
    exps = sorted(itertools.product(*[range(c) for c in caps]),
                  key=lambda e: (sum(e), tuple(-k for k in e)))
    index = {e: i for i, e in enumerate(exps)}
    d = len(exps)
    table = {}
    for i, j in itertools.combinations_with_replacement(range(d), 2):
        s = tuple(a + b for a, b in zip(exps[i], exps[j]))
        if s in index:
            table[(i, j)] = Element.basis(index[s], d, field)
    mul = MultiLinearOp("mul", 2, "symmetric", table, d, field)
    maps = {}
    for k, v in enumerate(vars):
        maps[f"E_{v}"] = LinearMap([[e[k] if r == c else 0 for c, e in enumerate(exps)]
                                    for r in range(d)], field)
    labels = [_monomial_label(vars, e) for e in exps]
    meta = {"id": "truncated:" + ",".join(f"{v}^{c}" for v, c in zip(vars, caps))}
    return AlgebraBundle(BasisSpace(labels), field, {"mul": mul}, maps, meta)


# -- invariants ------------------------------------------------------------------------

def _left_matrices(op: MultiLinearOp):
    d = op.dim
    return [[[op.basis_value((i, j))[r] for j in range(d)] for r in range(d)] for i in range(d)]


def _image_dim(op: MultiLinearOp) -> int:
    d = op.dim
    rows = [list(op.basis_value((i, j)).coeffs) for i in range(d) for j in range(d)]
    return rank(rows, d, op.field)


def _annihilator_dim(op: MultiLinearOp) -> int:
    # x is annihilated iff op(x, e_j) = 0 for every j: d*d linear conditions on x
    d = op.dim
    rows = [[op.basis_value((i, j))[r] for i in range(d)] for j in range(d) for r in range(d)]
    return d - rank(rows, d, op.field)


def _trace_form_rank(op: MultiLinearOp) -> int:
    d, field = op.dim, op.field
    Ls = _left_matrices(op)
    form = []
    for i in range(d):
        row = []
        for j in range(d):
            t = field.zero
            for r in range(d):
                for s in range(d):
                    t = t + Ls[i][r][s] * Ls[j][s][r]
            row.append(t)
        form.append(row)
    return rank(form, d, field)


def invariant_fingerprint(bundle: AlgebraBundle, mul: str = "mul", bracket: str = "bracket") -> tuple:
    """(dim L·L, dim [L,L], dim Ann(mul), dim Z(bracket), dim joint Der, rank tr(L_x L_y))."""
    for name in (mul, bracket):
        if name not in bundle.ops:
            raise KeyError(f"fingerprint needs op {name!r}")
    m, b = bundle.ops[mul], bundle.ops[bracket]
    return (_image_dim(m), _image_dim(b), _annihilator_dim(m), _annihilator_dim(b),
            joint_derivation_space(bundle, [mul, bracket]).dimension, _trace_form_rank(m))
