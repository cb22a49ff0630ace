"""Based vector spaces, multilinear operations and linear maps.

Everything here is immutable once built.  A :class:`MultiLinearOp` stores
its structure constants sparsely on canonical keys only: non-decreasing
index tuples for symmetric operations, strictly increasing ones for
alternating operations.  Values on other tuples are recovered on lookup.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Mapping, Sequence

from .fields import QQ, Field

SYMMETRIES = ("none", "symmetric", "alternating")


@dataclass(frozen=True)
class BasisSpace:
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("a basis needs at least one vector")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate basis labels in {labels}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis vector labelled {label!r}") from None

    @classmethod
    def standard(cls, dim: int) -> "BasisSpace":
        return cls(tuple(f"e{i + 1}" for i in range(dim)))


class Element:
    """A vector given by its dense coefficient tuple."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: Field = QQ):
        self.field = field
        self.coeffs = tuple(field(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple, field: Field) -> "Element":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.field = field
        return obj

    @classmethod
    def zero(cls, dim: int, field: Field = QQ) -> "Element":
        return cls._raw((field.zero,) * dim, field)

    @classmethod
    def basis(cls, i: int, dim: int, field: Field = QQ) -> "Element":
        z, o = field.zero, field.one
        return cls._raw(tuple(o if k == i else z for k in range(dim)), field)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def support(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "Element") -> "Element":
        return Element._raw(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __sub__(self, other: "Element") -> "Element":
        return Element._raw(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self) -> "Element":
        return Element._raw(tuple(-a for a in self.coeffs), self.field)

    def scale(self, c) -> "Element":
        c = self.field(c)
        return Element._raw(tuple(c * a for a in self.coeffs), self.field)

    def __rmul__(self, c) -> "Element":
        return self.scale(c)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Element({[self.field.format(c) for c in self.coeffs]})"

    def pretty(self, space: BasisSpace | None = None) -> str:
        labels = space.labels if space is not None else [f"e{i + 1}" for i in range(self.dim)]
        terms = []
        for i, c in self.support():
            s = self.field.format(c)
            terms.append(labels[i] if s == "1" else f"-{labels[i]}" if s == "-1" else f"{s}*{labels[i]}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def element_sum(elements: Iterable[Element], dim: int, field: Field) -> Element:
    acc = [field.zero] * dim
    for e in elements:
        for i, c in enumerate(e.coeffs):
            if c:
                acc[i] = acc[i] + c
    return Element._raw(tuple(acc), field)


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries assumed distinct)."""
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def canonical_key(key: tuple, symmetry: str):
    """Return ``(canonical_key, sign)``; sign 0 means the value is forced to zero."""
    if symmetry == "none":
        return key, 1
    skey = tuple(sorted(key))
    if symmetry == "symmetric":
        return skey, 1
    if len(set(key)) < len(key):
        return skey, 0
    return skey, _perm_sign(key)


class MultiLinearOp:
    """An arity-k multilinear operation given by structure constants."""

    def __init__(self, name: str, arity: int, symmetry: str, table: Mapping[tuple, Element],
                 dim: int, field: Field = QQ, *, _trusted: bool = False):
        if symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {symmetry!r}")
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.name = name
        self.arity = arity
        self.symmetry = symmetry
        self.dim = dim
        self.field = field
        if _trusted:
            self.table = dict(table)
        else:
            self.table = _canonical_table(arity, symmetry, table, dim, field)
        self._zero = Element.zero(dim, field)
        self._sparse = {k: tuple(v.support()) for k, v in self.table.items()}

    def basis_value(self, idx: tuple) -> Element:
        key, sign = canonical_key(idx, self.symmetry)
        if sign == 0:
            return self._zero
        v = self.table.get(key)
        if v is None:
            return self._zero
        return v if sign == 1 else -v

    def _basis_sparse(self, idx: tuple):
        key, sign = canonical_key(idx, self.symmetry)
        if sign == 0:
            return (), 0
        return self._sparse.get(key, ()), sign

    def __call__(self, *args: Element) -> Element:
        return evaluate_op(self, list(args))

    def renamed(self, name: str) -> "MultiLinearOp":
        return MultiLinearOp(name, self.arity, self.symmetry, self.table, self.dim, self.field,
                             _trusted=True)

    def same_constants(self, other: "MultiLinearOp") -> bool:
        """Structure-constant equality on every basis tuple, ignoring name and tag."""
        if self.arity != other.arity or self.dim != other.dim:
            return False
        for idx in itertools.product(range(self.dim), repeat=self.arity):
            if self.basis_value(idx) != other.basis_value(idx):
                return False
        return True

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other):
        if not isinstance(other, MultiLinearOp):
            return NotImplemented
        return (self.name, self.arity, self.symmetry, self.dim, self.field, self.table) == (
            other.name, other.arity, other.symmetry, other.dim, other.field, other.table)

    def __repr__(self):
        return (f"MultiLinearOp({self.name!r}, arity={self.arity}, symmetry={self.symmetry!r}, "
                f"dim={self.dim}, nonzero={len(self.table)})")


def _canonical_table(arity, symmetry, table, dim, field):
    out: dict[tuple, Element] = {}
    for key, value in table.items():
        key = tuple(int(i) for i in key)
        if len(key) != arity:
            raise ValueError(f"key {key} has length {len(key)}, expected arity {arity}")
        if any(i < 0 or i >= dim for i in key):
            raise ValueError(f"key {key} out of range for dimension {dim}")
        if not isinstance(value, Element):
            value = Element(value, field)
        if value.dim != dim:
            raise ValueError(f"value at {key} has dimension {value.dim}, expected {dim}")
        if value.field != field:
            value = Element(value.coeffs, field)
        ckey, sign = canonical_key(key, symmetry)
        if sign == 0:
            if not value.is_zero():
                raise ValueError(f"alternating table has nonzero entry at repeated key {key}")
            continue
        v = value if sign == 1 else -value
        if ckey in out:
            if out[ckey] != v:
                raise ValueError(
                    f"{symmetry} table inconsistent at {key}: conflicts with value at {ckey}")
        else:
            out[ckey] = v
    for key in [k for k, v in out.items() if v.is_zero()]:
        del out[key]
    return dict(sorted(out.items()))


def normalize_op(name: str, arity: int, symmetry: str, raw: Mapping[tuple, Element], dim: int,
                 field: Field = QQ) -> MultiLinearOp:
    """Canonicalize an arbitrary-key table, rejecting symmetry-inconsistent input."""
    return MultiLinearOp(name, arity, symmetry, raw, dim, field)


def canonical_keys(dim: int, arity: int, symmetry: str):
    if symmetry == "symmetric":
        return itertools.combinations_with_replacement(range(dim), arity)
    if symmetry == "alternating":
        return itertools.combinations(range(dim), arity)
    return itertools.product(range(dim), repeat=arity)


def op_from_function(name: str, arity: int, symmetry: str, dim: int, field: Field,
                     fn: Callable[..., Element]) -> MultiLinearOp:
    """Build an op by evaluating ``fn`` on basis vectors at every canonical key."""
    basis = [Element.basis(i, dim, field) for i in range(dim)]
    table = {}
    for key in canonical_keys(dim, arity, symmetry):
        v = fn(*(basis[i] for i in key))
        if not v.is_zero():
            table[key] = v
    return MultiLinearOp(name, arity, symmetry, table, dim, field, _trusted=True)


def evaluate_op(op: MultiLinearOp, args: Sequence[Element]) -> Element:
    """Multilinear extension of the structure constants to arbitrary elements."""
    if len(args) != op.arity:
        raise ValueError(f"{op.name} has arity {op.arity}, got {len(args)} arguments")
    for a in args:
        if a.dim != op.dim:
            raise ValueError(f"argument of dimension {a.dim} for {op.name} on dimension {op.dim}")
    field = op.field
    supports = [a.support() for a in args]
    if any(not s for s in supports):
        return op._zero
    acc = [field.zero] * op.dim
    alternating = op.symmetry == "alternating"
    for combo in itertools.product(*supports):
        idx = tuple(i for i, _ in combo)
        if alternating and len(set(idx)) < len(idx):
            continue
        sparse, sign = op._basis_sparse(idx)
        if not sparse:
            continue
        coef = combo[0][1]
        for _, c in combo[1:]:
            coef = coef * c
        if sign < 0:
            coef = -coef
        for k, v in sparse:
            acc[k] = acc[k] + coef * v
    return Element._raw(tuple(acc), field)


class LinearMap:
    """Square matrix; column j holds the image of basis vector j."""

    __slots__ = ("name", "matrix", "field")

    def __init__(self, matrix: Sequence[Sequence], field: Field = QQ, name: str = ""):
        rows = tuple(tuple(field(c) for c in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("linear map matrix must be square and non-empty")
        self.matrix = rows
        self.field = field
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, dim: int, field: Field = QQ, name: str = "Id") -> "LinearMap":
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)], field, name)

    @classmethod
    def zero(cls, dim: int, field: Field = QQ, name: str = "0") -> "LinearMap":
        return cls([[0] * dim for _ in range(dim)], field, name)

    @classmethod
    def from_images(cls, images: Sequence[Element], field: Field = QQ, name: str = "") -> "LinearMap":
        d = len(images)
        return cls([[images[j][i] for j in range(d)] for i in range(d)], field, name)

    def column(self, j: int) -> Element:
        return Element._raw(tuple(row[j] for row in self.matrix), self.field)

    def __call__(self, v: Element) -> Element:
        return apply_linear_map(self, v)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self ∘ other``."""
        d = self.dim
        z = self.field.zero
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                s = z
                for k in range(d):
                    a = self.matrix[i][k]
                    if a:
                        b = other.matrix[k][j]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return LinearMap(out, self.field)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap([[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
                         self.field)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap([[a - b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
                         self.field)

    def scale(self, c) -> "LinearMap":
        c = self.field(c)
        return LinearMap([[c * a for a in r] for r in self.matrix], self.field)

    def __rmul__(self, c) -> "LinearMap":
        return self.scale(c)

    def renamed(self, name: str) -> "LinearMap":
        return LinearMap(self.matrix, self.field, name)

    def flat(self) -> tuple:
        return tuple(c for row in self.matrix for c in row)

    def is_zero(self) -> bool:
        return not any(self.flat())

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        rows = [[self.field.format(c) for c in r] for r in self.matrix]
        return f"LinearMap({self.name!r}, {rows})"


def apply_linear_map(m: LinearMap, v: Element) -> Element:
    if m.dim != v.dim:
        raise ValueError(f"map of dimension {m.dim} applied to vector of dimension {v.dim}")
    field = m.field
    out = []
    nz = v.support()
    for row in m.matrix:
        s = field.zero
        for j, c in nz:
            a = row[j]
            if a:
                s = s + a * c
        out.append(s)
    return Element._raw(tuple(out), field)


@dataclass(frozen=True)
class AlgebraBundle:
    """A basis plus named operations and maps over one exact field."""

    space: BasisSpace
    field: Field = QQ
    ops: Mapping[str, MultiLinearOp] = dc_field(default_factory=dict)
    maps: Mapping[str, LinearMap] = dc_field(default_factory=dict)
    metadata: Mapping[str, str] = dc_field(default_factory=dict)

    def __post_init__(self):
        ops = dict(self.ops)
        maps = dict(self.maps)
        d = self.space.dim
        for name, op in ops.items():
            if op.name != name:
                ops[name] = op = op.renamed(name)
            if op.dim != d or op.field != self.field:
                raise ValueError(f"op {name!r} does not live on this space/field")
        for name, m in maps.items():
            if m.dim != d or m.field != self.field:
                raise ValueError(f"map {name!r} does not live on this space/field")
            if m.name != name:
                maps[name] = m.renamed(name)
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "metadata", {str(k): str(v) for k, v in self.metadata.items()})

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis(self, i: int) -> Element:
        return Element.basis(i, self.dim, self.field)

    def vector(self, coeffs) -> Element:
        return Element(coeffs, self.field)

    def element(self, value) -> Element:
        """Accept an Element, a basis label, an index, or a coefficient list."""
        if isinstance(value, Element):
            return value
        if isinstance(value, str):
            return self.basis(self.space.index(value))
        if isinstance(value, int):
            return self.basis(value)
        return Element(value, self.field)

    def with_op(self, op: MultiLinearOp, name: str | None = None) -> "AlgebraBundle":
        name = name or op.name
        ops = dict(self.ops)
        ops[name] = op.renamed(name)
        return AlgebraBundle(self.space, self.field, ops, self.maps, self.metadata)

    def with_map(self, m: LinearMap, name: str | None = None) -> "AlgebraBundle":
        name = name or m.name
        maps = dict(self.maps)
        maps[name] = m.renamed(name)
        return AlgebraBundle(self.space, self.field, self.ops, maps, self.metadata)

    def with_metadata(self, **kw) -> "AlgebraBundle":
        md = dict(self.metadata)
        md.update({k: str(v) for k, v in kw.items()})
        return AlgebraBundle(self.space, self.field, self.ops, self.maps, md)

    def without(self, *names: str) -> "AlgebraBundle":
        ops = {k: v for k, v in self.ops.items() if k not in names}
        maps = {k: v for k, v in self.maps.items() if k not in names}
        return AlgebraBundle(self.space, self.field, ops, maps, self.metadata)

    def over(self, field: Field) -> "AlgebraBundle":
        """Reinterpret every constant in another field (e.g. reduce rationals mod p)."""
        ops = {n: MultiLinearOp(n, op.arity, op.symmetry,
                                {k: Element(v.coeffs, field) for k, v in op.table.items()},
                                self.dim, field)
               for n, op in self.ops.items()}
        maps = {n: LinearMap(m.matrix, field, n) for n, m in self.maps.items()}
        return AlgebraBundle(self.space, field, ops, maps, self.metadata)

    def permuted(self, perm: Sequence[int]) -> "AlgebraBundle":
        """Relabel so that new basis vector ``i`` is old basis vector ``perm[i]``."""
        d = self.dim
        inv = [0] * d
        for new, old in enumerate(perm):
            inv[old] = new

        def move(v: Element) -> Element:
            return Element._raw(tuple(v.coeffs[perm[i]] for i in range(d)), self.field)

        ops = {}
        for name, op in self.ops.items():
            table = {tuple(inv[i] for i in k): move(v) for k, v in op.table.items()}
            ops[name] = MultiLinearOp(name, op.arity, op.symmetry, table, d, self.field)
        maps = {}
        for name, m in self.maps.items():
            maps[name] = LinearMap([[m.matrix[perm[i]][perm[j]] for j in range(d)] for i in range(d)],
                                   self.field, name)
        space = BasisSpace(tuple(self.space.labels[perm[i]] for i in range(d)))
        return AlgebraBundle(space, self.field, ops, maps, self.metadata)


def structure(space_or_dim, field: Field = QQ):
    """Small helper returning ``(dim, vec)`` where ``vec`` builds elements from sparse dicts."""
    dim = space_or_dim if isinstance(space_or_dim, int) else space_or_dim.dim

    def vec(terms: Mapping[int, object] | None = None) -> Element:
        coeffs = [0] * dim
        for i, c in (terms or {}).items():
            coeffs[i] = c
        return Element(coeffs, field)

    return dim, vec


def op_from_terms(name: str, arity: int, symmetry: str, dim: int, terms: Mapping[tuple, Mapping[int, object]],
                  field: Field = QQ) -> MultiLinearOp:
    """Build an op from ``{key: {output_index: coefficient}}`` (any keys, normalized)."""
    _, vec = structure(dim, field)
    return normalize_op(name, arity, symmetry, {k: vec(v) for k, v in terms.items()}, dim, field)
