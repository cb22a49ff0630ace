"""Exhaustive verification of multilinear identities on basis tuples.

Every identity registered here is multilinear in its variables, so it holds
on all of ``L`` as soon as it holds on every tuple of basis vectors.  Each
identity is written as one or more equations ``left == right``; a failure
is reported with the lexicographically first failing basis tuple.

Tuple pruning: an identity may declare contiguous blocks of variables in
which it is symmetric or alternating (up to sign).  Only sorted tuples are
then visited inside those blocks.  Because the blocks are contiguous, the
first failing sorted tuple is also the first failing tuple overall, so the
reported witness does not depend on pruning.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping, Sequence

from .core import AlgebraBundle, Element
from .fields import PrimeField


@dataclass(frozen=True)
class ViolationWitness:
    axiom: str
    indices: tuple
    left: Element
    right: Element
    equation: int = 0
    labels: tuple = ()

    def __post_init__(self):
        if self.left == self.right:
            raise AssertionError("a witness must exhibit unequal sides")


@dataclass(frozen=True)
class CheckReport:
    axiom: str
    holds: bool
    tuples_checked: int
    witness: ViolationWitness | None = None
    binding: Mapping[str, str] = dc_field(default_factory=dict)

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class Role:
    name: str
    kind: str  # "op" or "map"
    arity: int | None = None  # None: any arity >= 2
    alternating: bool = False


class Context:
    """Bound operations and maps for one identity check."""

    def __init__(self, bundle: AlgebraBundle, ops: dict, maps: dict):
        self.bundle = bundle
        self.field = bundle.field
        self.dim = bundle.dim
        self.ops = ops
        self.maps = maps
        self.zero = Element.zero(self.dim, self.field)

    def __getitem__(self, role):
        if role in self.ops:
            return self.ops[role]
        return self.maps[role]

    def arity(self, role: str) -> int:
        return self.ops[role].arity

    def commutative_tag(self, role: str = "mul") -> bool:
        return self.ops[role].symmetry == "symmetric"


Equations = Callable[[Context, Sequence[Element]], list]


@dataclass(frozen=True)
class Axiom:
    name: str
    roles: tuple
    nvars: Callable[[Context], int]
    equations: Equations
    blocks: Callable[[Context], list] = lambda c: []
    factor: Callable[[Context], int] = lambda c: 1
    doc: str = ""


AXIOMS: dict[str, Axiom] = {}


def _register(name, roles, nvars, blocks=None, factor=None, doc=""):
    def deco(fn):
        AXIOMS[name] = Axiom(
            name=name,
            roles=tuple(roles),
            nvars=nvars if callable(nvars) else (lambda c, n=nvars: n),
            equations=fn,
            blocks=blocks if callable(blocks) else (lambda c, b=blocks or []: list(b)),
            factor=factor if callable(factor) else (lambda c, f=factor or 1: f),
            doc=doc,
        )
        return fn
    return deco


MUL = Role("mul", "op", 2)
BRACKET = Role("bracket", "op", 2, alternating=True)
CIRC = Role("circ", "op", 2)
MU = Role("mu", "op", None, alternating=True)
MU3 = Role("mu", "op", 3, alternating=True)


def _sym_if_commutative(start, length, role="mul"):
    return lambda c: [(start, length, "sym")] if c.commutative_tag(role) else []


def _sum(c: Context, terms) -> Element:
    acc = c.zero
    for t in terms:
        acc = acc + t
    return acc


# -- associative commutative and Lie parts ---------------------------------

@_register("commutativity", [MUL], 2, doc="x·y = y·x")
def _commutativity(c, v):
    m = c["mul"]
    x, y = v
    return [(m(x, y), m(y, x))]


@_register("associativity", [MUL], 3, doc="(x·y)·z = x·(y·z)")
def _associativity(c, v):
    m = c["mul"]
    x, y, z = v
    return [(m(m(x, y), z), m(x, m(y, z)))]


@_register("jacobi", [BRACKET], 3, blocks=[(0, 3, "alt")], doc="[[x,y],z] + cyclic = 0")
def _jacobi(c, v):
    b = c["bracket"]
    x, y, z = v
    return [(b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y), c.zero)]


# -- compatibility rules ---------------------------------------------------

@_register("leibniz", [MUL, BRACKET], 3, blocks=_sym_if_commutative(1, 2),
           doc="[x, y·z] = [x,y]·z + y·[x,z]")
def _leibniz(c, v):
    m, b = c["mul"], c["bracket"]
    x, y, z = v
    return [(b(x, m(y, z)), m(b(x, y), z) + m(y, b(x, z)))]


@_register("transposed_leibniz", [MUL, BRACKET], 3, blocks=[(0, 2, "alt")], factor=2,
           doc="2 z·[x,y] = [z·x, y] + [x, z·y]")
def _transposed_leibniz(c, v):
    m, b = c["mul"], c["bracket"]
    x, y, z = v
    return [(2 * m(z, b(x, y)), b(m(z, x), y) + b(x, m(z, y)))]


@_register("gi1", [MUL, BRACKET], 3, blocks=[(0, 3, "alt")])
def _gi1(c, v):
    m, b = c["mul"], c["bracket"]
    x, y, z = v
    return [(m(x, b(y, z)) + m(y, b(z, x)) + m(z, b(x, y)), c.zero)]


@_register("gi2", [MUL, BRACKET], 4, blocks=[(1, 3, "alt")])
def _gi2(c, v):
    m, b = c["mul"], c["bracket"]
    h, x, y, z = v
    return [(b(m(h, b(x, y)), z) + b(m(h, b(y, z)), x) + b(m(h, b(z, x)), y), c.zero)]


@_register("gi3", [MUL, BRACKET], 4, blocks=[(1, 3, "alt")])
def _gi3(c, v):
    m, b = c["mul"], c["bracket"]
    h, x, y, z = v
    return [(b(m(h, x), b(y, z)) + b(m(h, y), b(z, x)) + b(m(h, z), b(x, y)), c.zero)]


def _gi4_lhs(c, h, x, y, z):
    m, b = c["mul"], c["bracket"]
    return m(b(h, x), b(y, z)) + m(b(h, y), b(z, x)) + m(b(h, z), b(x, y))


@_register("gi4", [MUL, BRACKET], 4, blocks=[(1, 3, "alt")])
def _gi4(c, v):
    return [(_gi4_lhs(c, *v), c.zero)]


@_register("strong_poisson", [MUL, BRACKET], 4, blocks=[(1, 3, "alt")],
           doc="[h,x]·[y,z] + [h,y]·[z,x] + [h,z]·[x,y] = 0")
def _strong_poisson(c, v):
    return [(_gi4_lhs(c, *v), c.zero)]


@_register("gi5", [MUL, BRACKET], 4,
           blocks=lambda c: [(0, 2, "alt")] + ([(2, 2, "sym")] if c.commutative_tag() else []),
           factor=2)
def _gi5(c, v):
    m, b = c["mul"], c["bracket"]
    x, y, u, w = v
    return [(b(m(x, u), m(y, w)) + b(m(x, w), m(y, u)), 2 * m(m(u, w), b(x, y)))]


@_register("gi6", [MUL, BRACKET], 4, doc="x[u,yv] + v[xy,u] + yu[v,x] = 0; variables (x, y, u, v)")
def _gi6(c, v):
    m, b = c["mul"], c["bracket"]
    x, y, u, w = v
    return [(m(x, b(u, m(y, w))) + m(w, b(m(x, y), u)) + m(m(y, u), b(w, x)), c.zero)]


@_register("inter0", [MUL, BRACKET], 3, doc="x·[y,z] = 0 and [x·y, z] = 0")
def _inter0(c, v):
    m, b = c["mul"], c["bracket"]
    x, y, z = v
    return [(m(x, b(y, z)), c.zero), (b(m(x, y), z), c.zero)]


# -- pre-Lie / Novikov side -------------------------------------------------

@_register("prelie", [CIRC], 3, blocks=[(0, 2, "alt")],
           doc="(x∘y)∘z − (y∘x)∘z = x∘(y∘z) − y∘(x∘z)")
def _prelie(c, v):
    o = c["circ"]
    x, y, z = v
    return [(o(o(x, y), z) - o(o(y, x), z), o(x, o(y, z)) - o(y, o(x, z)))]


@_register("novikov_right", [CIRC], 3, blocks=[(1, 2, "alt")], doc="(x∘y)∘z = (x∘z)∘y")
def _novikov_right(c, v):
    o = c["circ"]
    x, y, z = v
    return [(o(o(x, y), z), o(o(x, z), y))]


@_register("np1", [MUL, CIRC], 3, doc="(x·y)∘z = x·(y∘z)")
def _np1(c, v):
    m, o = c["mul"], c["circ"]
    x, y, z = v
    return [(o(m(x, y), z), m(x, o(y, z)))]


@_register("np2", [MUL, CIRC], 3, blocks=[(0, 2, "alt")],
           doc="(x∘y)·z − (y∘x)·z = x∘(y·z) − y∘(x·z)")
def _np2(c, v):
    m, o = c["mul"], c["circ"]
    x, y, z = v
    return [(m(o(x, y), z) - m(o(y, x), z), o(x, m(y, z)) - o(y, m(x, z)))]


@_register("prelie_com", [MUL, CIRC], 3, blocks=_sym_if_commutative(1, 2),
           doc="x∘(y·z) = (x∘y)·z + y·(x∘z)")
def _prelie_com(c, v):
    m, o = c["mul"], c["circ"]
    x, y, z = v
    return [(o(x, m(y, z)), m(o(x, y), z) + m(y, o(x, z)))]


# -- n-ary side -------------------------------------------------------------

def _fi_nvars(c):
    n = c.arity("mu")
    return 2 * n - 1


def _fi_blocks(c):
    n = c.arity("mu")
    return [(0, n, "alt"), (n, n - 1, "alt")]


@_register("fundamental_identity", [MU], _fi_nvars, blocks=_fi_blocks,
           doc="ad(y_1..y_{n-1}) is a derivation of the n-ary bracket")
def _fundamental_identity(c, v):
    mu = c["mu"]
    n = mu.arity
    xs, ys = list(v[:n]), list(v[n:])
    left = mu(mu(*xs), *ys)
    terms = []
    for i in range(n):
        args = list(xs)
        args[i] = mu(xs[i], *ys)
        terms.append(mu(*args))
    return [(left, _sum(c, terms))]


@_register("poisson_3lie", [MUL, MU3], 4,
           blocks=lambda c: [(0, 2, "alt")] + ([(2, 2, "sym")] if c.commutative_tag() else []),
           doc="[x,y,u·v] = u·[x,y,v] + [x,y,u]·v")
def _poisson_3lie(c, v):
    m, mu = c["mul"], c["mu"]
    x, y, u, w = v
    return [(mu(x, y, m(u, w)), m(u, mu(x, y, w)) + m(mu(x, y, u), w))]


@_register("strong_3", [MUL, MU3], 6, blocks=[(0, 2, "alt"), (2, 4, "alt")])
def _strong_3(c, v):
    m, mu = c["mul"], c["mu"]
    x, y, u1, u2, u3, u4 = v
    total = (-m(mu(x, y, u1), mu(u2, u3, u4)) + m(mu(x, y, u2), mu(u1, u3, u4))
             - m(mu(x, y, u3), mu(u1, u2, u4)) + m(mu(x, y, u4), mu(u1, u2, u3)))
    return [(total, c.zero)]


@_register("transposed_3lie", [MUL, MU3], 4, blocks=[(0, 3, "alt")], factor=3,
           doc="3u·[x,y,z] = [x·u,y,z] + [x,y·u,z] + [x,y,z·u]")
def _transposed_3lie(c, v):
    m, mu = c["mul"], c["mu"]
    x, y, z, u = v
    return [(3 * m(u, mu(x, y, z)), mu(m(x, u), y, z) + mu(x, m(y, u), z) + mu(x, y, m(z, u)))]


@_register("transposed_nlie", [MUL, MU], lambda c: c.arity("mu") + 1,
           blocks=lambda c: [(0, c.arity("mu"), "alt")], factor=lambda c: c.arity("mu"),
           doc="n w·μ(x_1..x_n) = Σ μ(x_1,..,w·x_i,..,x_n); variables (x_1..x_n, w)")
def _transposed_nlie(c, v):
    m, mu = c["mul"], c["mu"]
    n = mu.arity
    xs, w = list(v[:n]), v[n]
    terms = []
    for i in range(n):
        args = list(xs)
        args[i] = m(w, xs[i])
        terms.append(mu(*args))
    return [(n * m(w, mu(*xs)), _sum(c, terms))]


@_register("mix3", [MUL, MU3], 4, doc="u·[x,y,z] = 0 and [u·x,y,z] = 0; variables (u, x, y, z)")
def _mix3(c, v):
    m, mu = c["mul"], c["mu"]
    u, x, y, z = v
    return [(m(u, mu(x, y, z)), c.zero), (mu(m(u, x), y, z), c.zero)]


# -- maps ---------------------------------------------------------------------

def _op_blocks(role):
    def blocks(c):
        op = c[role]
        if op.symmetry == "symmetric":
            return [(0, op.arity, "sym")]
        if op.symmetry == "alternating":
            return [(0, op.arity, "alt")]
        return []
    return blocks


@_register("derivation_of", [Role("op", "op", 0), Role("D", "map")], lambda c: c.arity("op"),
           blocks=_op_blocks("op"), doc="D(op(x..)) = Σ op(.., D x_i, ..)")
def _derivation_of(c, v):
    op, D = c["op"], c["D"]
    terms = []
    for i in range(op.arity):
        args = list(v)
        args[i] = D(v[i])
        terms.append(op(*args))
    return [(D(op(*v)), _sum(c, terms))]


@_register("endomorphism_of", [Role("op", "op", 0), Role("f", "map")], lambda c: c.arity("op"),
           blocks=_op_blocks("op"), doc="f(op(x..)) = op(f x_1, .., f x_k)")
def _endomorphism_of(c, v):
    op, f = c["op"], c["f"]
    return [(f(op(*v)), op(*(f(x) for x in v)))]


@_register("involution", [Role("f", "map")], 1, doc="f(f(x)) = x")
def _involution(c, v):
    f = c["f"]
    return [(f(f(v[0])), v[0])]


@_register("commuting_maps", [Role("A", "map"), Role("B", "map")], 1, doc="A(B(x)) = B(A(x))")
def _commuting_maps(c, v):
    A, B = c["A"], c["B"]
    return [(A(B(v[0])), B(A(v[0])))]


@_register("anti", [BRACKET, Role("f", "map")], 2,
           doc="f([x,y]) = −[f(x), f(y)], together with f(f(x)) = x")
def _anti(c, v):
    b, f = c["bracket"], c["f"]
    x, y = v
    return [(f(b(x, y)), -b(f(x), f(y))), (f(f(x)), x)]


@_register("const3_extra", [MUL, BRACKET, Role("f", "map")], 4, blocks=[(0, 3, "alt")],
           doc="(f(u) − u)·(f(x)[y,z] + f(y)[z,x] + f(z)[x,y]) = 0; variables (x, y, z, u)")
def _const3_extra(c, v):
    m, b, f = c["mul"], c["bracket"], c["f"]
    x, y, z, u = v
    inner = m(f(x), b(y, z)) + m(f(y), b(z, x)) + m(f(z), b(x, y))
    return [(m(f(u) - u, inner), c.zero)]


@_register("aux_identity", [MUL, BRACKET, Role("D", "map")], 3, blocks=[(0, 3, "alt")],
           doc="D(x)D([y,z]) + cyclic = −x[Dy,Dz] − cyclic")
def _aux_identity(c, v):
    m, b, D = c["mul"], c["bracket"], c["D"]
    x, y, z = v
    Dx, Dy, Dz = D(x), D(y), D(z)
    left = m(Dx, D(b(y, z))) + m(Dy, D(b(z, x))) + m(Dz, D(b(x, y)))
    right = -(m(x, b(Dy, Dz)) + m(y, b(Dz, Dx)) + m(z, b(Dx, Dy)))
    return [(left, right)]


@_register("hom_jacobi", [BRACKET, Role("phi", "map")], 3, blocks=[(0, 3, "alt")],
           doc="[φx,[y,z]] + [φy,[z,x]] + [φz,[x,y]] = 0")
def _hom_jacobi(c, v):
    b, phi = c["bracket"], c["phi"]
    x, y, z = v
    return [(b(phi(x), b(y, z)) + b(phi(y), b(z, x)) + b(phi(z), b(x, y)), c.zero)]


@_register("varphi2", [BRACKET, Role("phi", "map")], 2, blocks=[(0, 2, "alt")],
           doc="φ²([x,y]) = [φx, φy]")
def _varphi2(c, v):
    b, phi = c["bracket"], c["phi"]
    x, y = v
    return [(phi(phi(b(x, y))), b(phi(x), phi(y)))]


@_register("hom_multiplicative", [BRACKET, Role("phi", "map")], 2, blocks=[(0, 2, "alt")],
           doc="φ([x,y]) = [φx, φy]")
def _hom_multiplicative(c, v):
    b, phi = c["bracket"], c["phi"]
    x, y = v
    return [(phi(b(x, y)), b(phi(x), phi(y)))]


# -- profiles -----------------------------------------------------------------

_CA = ["commutativity", "associativity"]

PROFILES: dict[str, list] = {
    "Poisson": _CA + ["jacobi", "leibniz"],
    "TransposedPoisson": _CA + ["jacobi", "transposed_leibniz"],
    "StrongPoisson": _CA + ["jacobi", "leibniz", "strong_poisson"],
    "NovikovPoisson": _CA + ["prelie", "novikov_right", "np1", "np2"],
    "PreLiePoisson": _CA + ["prelie", "np1", "np2"],
    "PreLieCom": _CA + ["prelie", "prelie_com"],
    "DifferentialNovikovPoisson": _CA + ["prelie", "novikov_right", "np1", "np2", "prelie_com"],
    "Poisson3Lie": _CA + ["fundamental_identity", "poisson_3lie"],
    "StrongPoisson3Lie": _CA + ["fundamental_identity", "poisson_3lie", "strong_3"],
    "TPA3Lie": _CA + ["fundamental_identity", "transposed_3lie"],
    "TPAnLie": _CA + ["fundamental_identity", "transposed_nlie"],
    "HomLie": ["hom_jacobi"],
}


def _squash(name: str) -> str:
    return name.replace("-", "").replace("_", "").replace(" ", "").lower()


_PROFILE_ALIASES = {_squash(k): k for k in PROFILES}
_PROFILE_ALIASES.update({"tpa": "TransposedPoisson", "tpa3": "TPA3Lie", "tpanlie": "TPAnLie"})


def profile_name(name: str) -> str:
    try:
        return _PROFILE_ALIASES[_squash(name)]
    except KeyError:
        raise KeyError(f"unknown profile {name!r}; known: {sorted(PROFILES)}") from None


def axiom_names() -> list:
    return sorted(AXIOMS)


# -- checking -------------------------------------------------------------------

def _resolve(bundle: AlgebraBundle, ax: Axiom, binding: Mapping[str, str] | None):
    binding = dict(binding or {})
    ops, maps, used = {}, {}, {}
    for role in ax.roles:
        target = binding.get(role.name, role.name)
        used[role.name] = target
        if role.kind == "op":
            if target not in bundle.ops:
                raise KeyError(f"{ax.name}: role {role.name!r} bound to missing op {target!r}")
            op = bundle.ops[target]
            if role.arity and op.arity != role.arity:
                raise ValueError(f"{ax.name}: role {role.name!r} needs arity {role.arity}, "
                                 f"{target!r} has arity {op.arity}")
            if role.arity is None and op.arity < 2:
                raise ValueError(f"{ax.name}: role {role.name!r} needs arity >= 2")
            if role.alternating and op.symmetry != "alternating":
                raise ValueError(f"{ax.name}: role {role.name!r} needs an alternating op, "
                                 f"{target!r} is {op.symmetry}")
            ops[role.name] = op
        else:
            if target not in bundle.maps:
                raise KeyError(f"{ax.name}: role {role.name!r} bound to missing map {target!r}")
            maps[role.name] = bundle.maps[target]
    return Context(bundle, ops, maps), used


def _check_field(ax: Axiom, ctx: Context):
    field = ctx.field
    if isinstance(field, PrimeField):
        p = field.p
        f = ax.factor(ctx)
        if f % p == 0:
            raise ValueError(f"{ax.name}: factor {f} vanishes in GF({p})")
        for op in ctx.ops.values():
            if op.arity >= p:
                raise ValueError(f"{ax.name}: GF({p}) needs p > arity, {op.name} has arity {op.arity}")


def _tuples(d: int, nvars: int, blocks: list):
    parts = []
    pos = 0
    for start, length, kind in sorted(blocks):
        if start < pos:
            raise AssertionError("overlapping pruning blocks")
        for _ in range(start - pos):
            parts.append(((i,) for i in range(d)))
        if kind == "alt":
            parts.append(itertools.combinations(range(d), length))
        else:
            parts.append(itertools.combinations_with_replacement(range(d), length))
        pos = start + length
    for _ in range(nvars - pos):
        parts.append(((i,) for i in range(d)))
    for combo in itertools.product(*[list(p) for p in parts]):
        yield tuple(i for block in combo for i in block)


def get_axiom(name: str) -> Axiom:
    try:
        return AXIOMS[name]
    except KeyError:
        raise KeyError(f"unknown axiom {name!r}; known: {axiom_names()}") from None


def evaluate_identity(bundle: AlgebraBundle, axiom: str, indices: Sequence[int],
                      binding: Mapping[str, str] | None = None) -> list:
    """Evaluate both sides of every equation of ``axiom`` at one basis tuple."""
    ax = get_axiom(axiom)
    ctx, _ = _resolve(bundle, ax, binding)
    if len(indices) != ax.nvars(ctx):
        raise ValueError(f"{axiom} takes {ax.nvars(ctx)} variables")
    basis = [bundle.basis(i) for i in range(bundle.dim)]
    return ax.equations(ctx, [basis[i] for i in indices])


def check_identity(bundle: AlgebraBundle, axiom: str, binding: Mapping[str, str] | None = None,
                   *, prune: bool = True) -> CheckReport:
    ax = get_axiom(axiom)
    ctx, used = _resolve(bundle, ax, binding)
    _check_field(ax, ctx)
    d = bundle.dim
    nvars = ax.nvars(ctx)
    blocks = ax.blocks(ctx) if prune else []
    basis = [bundle.basis(i) for i in range(d)]
    checked = 0
    for idx in _tuples(d, nvars, blocks):
        checked += 1
        for k, (left, right) in enumerate(ax.equations(ctx, [basis[i] for i in idx])):
            if left != right:
                w = ViolationWitness(ax.name, idx, left, right, k,
                                     tuple(bundle.space.labels[i] for i in idx))
                return CheckReport(ax.name, False, checked, w, used)
    return CheckReport(ax.name, True, checked, None, used)


def check_profile(bundle: AlgebraBundle, profile: str, binding: Mapping[str, str] | None = None,
                  *, prune: bool = True) -> list:
    name = profile_name(profile)
    return [check_identity(bundle, ax, binding, prune=prune) for ax in PROFILES[name]]


def passes(bundle: AlgebraBundle, what: str, binding: Mapping[str, str] | None = None) -> bool:
    """True if ``what`` (an axiom or a profile name) holds."""
    if what in AXIOMS:
        return check_identity(bundle, what, binding).holds
    return all(r.holds for r in check_profile(bundle, what, binding))


def failing(reports) -> list:
    return [r for r in reports if not r.holds]


def reverify(bundle: AlgebraBundle, witness: ViolationWitness,
             binding: Mapping[str, str] | None = None) -> bool:
    """Re-evaluate a witness; True if it still exhibits the same inequality."""
    left, right = evaluate_identity(bundle, witness.axiom, witness.indices, binding)[witness.equation]
    return left != right and left == witness.left and right == witness.right


def is_derivation(bundle: AlgebraBundle, op: str, D: str) -> CheckReport:
    return check_identity(bundle, "derivation_of", {"op": op, "D": D})

