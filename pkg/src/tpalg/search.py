"""Brute-force enumeration over GF(p), seeded instance sampling and the n-Lie ladder harness.

Randomness comes from :class:`SplitMix64` only.  Its output sequence is
fixed by the published SplitMix64 constants, so a seed reproduces the same
instances on every platform and Python version.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .axioms import check_identity, passes
from .catalog import catalog_2d_transposed, truncated_polynomial_algebra
from .constructions import derivation_bracket, nlie_ladder_step
from .core import AlgebraBundle, BasisSpace, LinearMap, MultiLinearOp
from .fields import QQ, Field, PrimeField
from .linsolve import compatible_symmetric_products

log = logging.getLogger(__name__)

_MASK = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, golden-ratio increment."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) by plain modulo reduction."""
        return self.next() % n

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]


@dataclass
class SearchReport:
    target: str
    candidates: int
    hits: list = dc_field(default_factory=list)
    counterexamples: list = dc_field(default_factory=list)  # (description, ViolationWitness)
    seed: int = 0
    verdict: str = "no-candidates"
    partial: bool = False
    details: dict = dc_field(default_factory=dict)


# -- involutive anti-morphisms ---------------------------------------------------------

def _matrix_chunks(p: int, d: int, limit: int, chunk: int = 1 << 16):
    """Row-major lexicographic enumeration of d×d residue matrices, in numpy chunks."""
    n = d * d
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, limit, chunk):
        idx = np.arange(start, min(start + chunk, limit), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        yield start, digits.reshape(-1, d, d)


def find_involutive_antimorphisms(bundle: AlgebraBundle, mul: str = "mul", bracket: str = "bracket",
                                  budget: int = 2_000_000, max_dim: int = 3) -> SearchReport:
    """All f with f² = Id, f an endomorphism of ``mul`` and f[x,y] = −[fx,fy].

    Enumerates every matrix over GF(p) in row-major lexicographic order, up
    to ``budget`` candidates; ``partial`` is set when the budget cuts the
    enumeration short.
    """
    field = bundle.field
    if not isinstance(field, PrimeField):
        raise ValueError("involution search needs a bundle over GF(p)")
    d, p = bundle.dim, field.p
    if d > max_dim:
        raise ValueError(f"dimension {d} exceeds the search cap {max_dim}")
    total = p ** (d * d)
    limit = min(total, budget)
    eye = np.eye(d, dtype=np.int64)
    involutions = []
    for start, mats in _matrix_chunks(p, d, limit):
        sq = np.einsum("nij,njk->nik", mats, mats) % p
        ok = np.all(sq == eye, axis=(1, 2))
        for k in np.nonzero(ok)[0]:
            involutions.append((start + int(k), mats[k]))
    hits = []
    binding_end = {"op": mul, "f": "f"}
    binding_anti = {"bracket": bracket, "f": "f"}
    for index, m in involutions:
        f = LinearMap(m.tolist(), field, "f")
        trial = bundle.with_map(f, "f")
        if (check_identity(trial, "endomorphism_of", binding_end).holds
                and check_identity(trial, "anti", binding_anti).holds):
            hits.append(f)
    return SearchReport(
        target="involutive-antimorphism", candidates=limit, hits=hits,
        verdict="all-pass" if hits else "no-candidates", partial=limit < total,
        details={"field": f"GF({p})", "dim": d, "involutions": len(involutions),
                 "space": total})


# -- instance sampling ---------------------------------------------------------------------

def _normalize_generator(generator) -> dict:
    if isinstance(generator, str):
        return {"kind": generator}
    return dict(generator)


def _random_combination(rng: SplitMix64, maps: list, field: Field, lo=-2, hi=2) -> LinearMap:
    acc = LinearMap.zero(maps[0].dim, field)
    for m in maps:
        acc = acc + m.scale(lo + rng.below(hi - lo + 1))
    return acc


def _truncated_instances(generator: dict, rng: SplitMix64, count: int, field: Field) -> list:
    caps = list(generator.get("caps", [2, 2]))
    names = list(generator.get("vars", ["x", "y", "z", "w"][:len(caps)]))
    base = truncated_polynomial_algebra(names, caps, field)
    euler = [base.maps[f"E_{v}"] for v in names]
    out = []
    attempts = 0
    while len(out) < count and attempts < 20 * count:
        attempts += 1
        D1 = _random_combination(rng, euler, field)
        D = _random_combination(rng, euler, field)
        br = derivation_bracket(base.ops["mul"], D1)
        b = (base.with_op(br, "bracket").with_map(D1, "D1").with_map(D, "D")
             .with_metadata(generator="truncated-poly", sample=len(out)))
        if passes(b, "TransposedPoisson"):
            out.append(b)
    return out


def _solver_family_instances(generator: dict, rng: SplitMix64, count: int | None, field: Field) -> list:
    bracket: MultiLinearOp = generator["bracket"]
    values = [field(v) for v in generator.get("range", [-1, 0, 1])]
    space = compatible_symmetric_products(bracket)
    if count is None:
        coords_list = list(itertools.product(values, repeat=space.dimension))
    else:
        coords_list = [tuple(rng.choice(values) for _ in range(space.dimension)) for _ in range(count)]
    out = []
    labels = BasisSpace.standard(bracket.dim)
    for coords in coords_list:
        mul = space.instantiate(coords)
        b = AlgebraBundle(labels, field, {"mul": mul, "bracket": bracket},
                          {}, {"generator": "solver-family",
                               "coordinates": ",".join(field.format(c) for c in coords)})
        if generator.get("associative", True) and not check_identity(b, "associativity").holds:
            continue
        if passes(b, "TransposedPoisson"):
            out.append(b)
    return out


def sample_tpa_instances(generator, seed: int = 0, count: int | None = None,
                         field: Field = QQ) -> list:
    """Deterministic list of bundles, each verified transposed Poisson before emission.

    ``generator`` is ``"catalog"``, ``{"kind": "truncated-poly", "caps": [...]}`` or
    ``{"kind": "solver-family", "bracket": op, "range": [...]}``.  Catalog
    entries that fail the check are dropped.
    """
    generator = _normalize_generator(generator)
    kind = generator.get("kind")
    rng = SplitMix64(seed)
    if kind == "catalog":
        out = [e.bundle for e in catalog_2d_transposed(field=field, verify=False)
               if passes(e.bundle, "TransposedPoisson")]
    elif kind == "truncated-poly":
        out = _truncated_instances(generator, rng, 20 if count is None else count, field)
    elif kind == "solver-family":
        out = _solver_family_instances(generator, rng, count, generator["bracket"].field)
    else:
        raise ValueError(f"unknown generator {kind!r}")
    if not out:
        log.warning("generator %s produced no valid instance", kind)
    return out


# -- conjecture ladder -----------------------------------------------------------------

def test_conjecture_ladder(bundle: AlgebraBundle, levels: int, mul: str = "mul", mu: str = "bracket",
                           derivations: str | Sequence[str] = "D", max_arity: int = 5,
                           max_dim: int = 16) -> SearchReport:
    """Climb μ_n → μ_{n+1} ``levels`` times, checking the n-Lie identities at each rung.

    ``derivations`` is one map name used at every level, or one name per
    level.  The first failing identity is recorded with its witness and the
    climb stops.  A map that stops being a derivation of the new bracket
    ends the climb with verdict ``no-candidates`` at that level.
    """
    names = [derivations] * levels if isinstance(derivations, str) else list(derivations)
    if len(names) < levels:
        raise ValueError("need one derivation per level")
    m = bundle.ops[mul]
    current = bundle.ops[mu]
    report = SearchReport(target="nlie-ladder", candidates=0,
                          details={"start_arity": current.arity, "levels": levels})
    for level in range(1, levels + 1):
        D = bundle.maps[names[level - 1]]
        scratch = AlgebraBundle(bundle.space, bundle.field, {"mul": m, "mu": current}, {"D": D})
        if level > 1 and not check_identity(scratch, "derivation_of", {"op": "mu"}).holds:
            report.details["stopped"] = f"level {level}: {names[level - 1]} does not derive the bracket"
            report.verdict = "no-candidates"
            return report
        nxt = nlie_ladder_step(m, current, D, max_arity=max_arity, max_dim=max_dim)
        report.candidates += 1
        out = AlgebraBundle(bundle.space, bundle.field, {"mul": m, "mu": nxt})
        for ax in ("fundamental_identity", "transposed_nlie"):
            r = check_identity(out, ax)
            if not r.holds:
                report.counterexamples.append((f"level {level} arity {nxt.arity}", r.witness))
                report.verdict = "counterexample-found"
                report.details["failed_op"] = nxt
                return report
        report.hits.append(nxt)
        current = nxt
    report.verdict = "all-pass"
    return report


test_conjecture_ladder.__test__ = False  # not a pytest test despite the name
