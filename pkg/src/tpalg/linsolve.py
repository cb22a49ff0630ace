"""Exact linear algebra over QQ or GF(p), and the linear problems built on it.

The two families of unknowns are linear maps (derivation spaces) and
symmetric bilinear structure constants (compatible products).  Both lead to
homogeneous linear systems solved by plain Gaussian elimination; solution
bases are returned in reduced row-echelon form so results are canonical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .axioms import AXIOMS, Context
from .core import AlgebraBundle, BasisSpace, Element, LinearMap, MultiLinearOp, canonical_keys
from .fields import Field


def rref(rows: Sequence[Sequence], ncols: int, field: Field):
    """Reduced row-echelon form; returns ``(rows, pivot_columns)``.

    Pivot choice is the first nonzero entry in the column, no scaling heuristics.
    """
    m = [[field(c) for c in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][col]
        m[r] = [inv * a for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list:
    """Basis of ``{v : A v = 0}``, itself in reduced row-echelon form."""
    reduced, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(basis, ncols, field)
    return [tuple(v) for v in canon]


def _sparse_rows(rows: Iterable[dict], ncols: int, field: Field) -> list:
    out = []
    for r in rows:
        if any(r.values()):
            dense = [field.zero] * ncols
            for k, c in r.items():
                dense[k] = dense[k] + c
            if any(dense):
                out.append(dense)
    return out


@dataclass(frozen=True)
class SolutionSpace:
    """A linear space of maps or ops, given by a basis of coordinate vectors."""

    kind: str  # "map" or "op"
    dim: int
    field: Field
    unknowns: tuple
    vectors: tuple
    op_name: str = "mul"
    op_arity: int = 2
    op_symmetry: str = "symmetric"

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def combine(self, coords: Sequence) -> tuple:
        if len(coords) != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates, got {len(coords)}")
        z = self.field.zero
        acc = [z] * len(self.unknowns)
        for c, v in zip(coords, self.vectors):
            c = self.field(c)
            if c:
                acc = [a + c * b for a, b in zip(acc, v)]
        return tuple(acc)

    def reconstitute(self, vec: Sequence):
        d = self.dim
        if self.kind == "map":
            return LinearMap([[vec[i * d + j] for j in range(d)] for i in range(d)], self.field)
        table = {}
        for (key, k), c in zip(self.unknowns, vec):
            if c:
                table.setdefault(key, [self.field.zero] * d)[k] = c
        return MultiLinearOp(self.op_name, self.op_arity, self.op_symmetry,
                             {k: Element(v, self.field) for k, v in table.items()}, d, self.field)

    def instantiate(self, coords: Sequence):
        return self.reconstitute(self.combine(coords))

    def members(self) -> list:
        return [self.reconstitute(v) for v in self.vectors]

    def coordinates_of(self, obj) -> tuple:
        """Unknown-vector of a map or op in this ambient space."""
        if self.kind == "map":
            return obj.flat()
        return tuple(obj.basis_value(key)[k] for key, k in self.unknowns)

    def contains(self, obj) -> bool:
        vec = self.coordinates_of(obj)
        n = len(self.unknowns)
        return rank(list(self.vectors) + [vec], n, self.field) == self.dimension


def _map_unknowns(d: int) -> tuple:
    return tuple((i, j) for i in range(d) for j in range(d))


def _derivation_rows(op: MultiLinearOp, d: int) -> list:
    """Linear constraints on the entries of D (row-major) for D to derive ``op``."""
    rows = []
    for key in canonical_keys(d, op.arity, op.symmetry):
        val = op.basis_value(key)
        eqs = [dict() for _ in range(d)]
        # D(op(e_key))_r = sum_m val_m * D[r][m]
        for mm, c in val.support():
            for r in range(d):
                eqs[r][r * d + mm] = eqs[r].get(r * d + mm, 0) + c
        # minus sum_i sum_s D[s][key_i] * op(key with slot i -> s)_r
        for i, ki in enumerate(key):
            for s in range(d):
                idx = key[:i] + (s,) + key[i + 1:]
                for r, c in op.basis_value(idx).support():
                    eqs[r][s * d + ki] = eqs[r].get(s * d + ki, 0) - c
        rows.extend(eqs)
    return rows


def _commutant_rows(C: LinearMap, d: int) -> list:
    rows = []
    for r in range(d):
        for c in range(d):
            eq = {}
            for k in range(d):
                a = C.matrix[k][c]
                if a:
                    eq[r * d + k] = eq.get(r * d + k, 0) + a
                b = C.matrix[r][k]
                if b:
                    eq[k * d + c] = eq.get(k * d + c, 0) - b
            rows.append(eq)
    return rows


def _require_bilinear(bundle: AlgebraBundle, names: Sequence[str]) -> list:
    ops = []
    for n in names:
        if n not in bundle.ops:
            raise KeyError(f"no op named {n!r}")
        op = bundle.ops[n]
        if op.arity != 2:
            raise ValueError(f"derivation spaces need bilinear ops; {n!r} has arity {op.arity}")
        ops.append(op)
    return ops


def derivation_space(bundle: AlgebraBundle, op_names: Sequence[str]) -> SolutionSpace:
    """All linear maps that are simultaneous derivations of every listed op."""
    return joint_derivation_space(bundle, op_names, None)


def joint_derivation_space(bundle: AlgebraBundle, op_names: Sequence[str],
                           commuting_with: LinearMap | str | None = None) -> SolutionSpace:
    d, field = bundle.dim, bundle.field
    rows = []
    for op in _require_bilinear(bundle, op_names):
        rows.extend(_derivation_rows(op, d))
    if commuting_with is not None:
        C = bundle.maps[commuting_with] if isinstance(commuting_with, str) else commuting_with
        if C.dim != d:
            raise ValueError("commuting map has the wrong dimension")
        rows.extend(_commutant_rows(C, d))
    dense = _sparse_rows(rows, d * d, field)
    basis = nullspace(dense, d * d, field)
    return SolutionSpace("map", d, field, _map_unknowns(d), tuple(basis))


_PRODUCT_RULES = {"transposed_leibniz": "transposed_leibniz", "transposed": "transposed_leibniz",
                  "leibniz": "leibniz"}


def compatible_symmetric_products(bracket: MultiLinearOp, rule: str = "transposed_leibniz",
                                  name: str = "mul") -> SolutionSpace:
    """Every symmetric bilinear product satisfying ``rule`` against a fixed bracket.

    The rule is linear in the product, so the constraint matrix is assembled
    column by column: each column is the residual of the rule when the product
    is a single unit structure constant.
    """
    if bracket.arity != 2 or bracket.symmetry != "alternating":
        raise ValueError("the bracket must be a bilinear alternating op")
    try:
        axiom = AXIOMS[_PRODUCT_RULES[rule]]
    except KeyError:
        raise ValueError(f"unknown rule {rule!r}; use 'transposed_leibniz' or 'leibniz'") from None
    d, field = bracket.dim, bracket.field
    unknowns = tuple((key, k) for key in canonical_keys(d, 2, "symmetric") for k in range(d))
    space = BasisSpace.standard(d)
    basis = [Element.basis(i, d, field) for i in range(d)]
    triples = list(itertools.product(range(d), repeat=3))
    columns = []
    for key, k in unknowns:
        unit = MultiLinearOp(name, 2, "symmetric", {key: basis[k]}, d, field)
        bundle = AlgebraBundle(space, field, {"mul": unit, "bracket": bracket})
        ctx = Context(bundle, {"mul": unit, "bracket": bracket}, {})
        col = []
        for t in triples:
            ((left, right),) = axiom.equations(ctx, [basis[i] for i in t])
            col.extend((left - right).coeffs)
        columns.append(col)
    nrows = len(triples) * d
    rows = [[columns[j][i] for j in range(len(unknowns))] for i in range(nrows)]
    rows = [r for r in rows if any(r)]
    sol = nullspace(rows, len(unknowns), field)
    return SolutionSpace("op", d, field, unknowns, tuple(sol), op_name=name)


def filter_associative(space: SolutionSpace, samples: Iterable[Sequence]) -> list:
    """Instantiate each coordinate sample and keep the associative products."""
    from .axioms import check_identity

    if space.kind != "op":
        raise ValueError("filter_associative needs a space of products")
    kept = []
    bspace = BasisSpace.standard(space.dim)
    for coords in samples:
        coords = tuple(space.field(c) for c in coords)
        op = space.instantiate(coords)
        bundle = AlgebraBundle(bspace, space.field, {"mul": op})
        if check_identity(bundle, "associativity").holds:
            kept.append((coords, op))
    return kept
