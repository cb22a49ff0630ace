# %% [markdown]
# Seeded search
#
# Over GF(p) every matrix can be enumerated. Here we look for involutions
# that respect the product and reverse the bracket.

# %%
from tpalg import (GF, catalog_entry, derivation_bracket, emit_report, find_involutive_antimorphisms,
                   sample_tpa_instances, test_conjecture_ladder, truncated_polynomial_algebra)



def rows(m):
    return [[m.field.format(c) for c in r] for r in m.matrix]


b = catalog_entry("nonabelian-b", GF(5)).bundle
rep = find_involutive_antimorphisms(b)
print(rep.verdict, "with", len(rep.hits), "hits out of", rep.candidates, "matrices")
for f in rep.hits:
    print(" ", rows(f))

# %% [markdown]
# Random instances come from a fixed generator, so a seed reproduces them.

# %%
inst = sample_tpa_instances({"kind": "truncated-poly", "caps": [2, 3]}, seed=1, count=3)
print("basis:", inst[0].space.labels)
for x in inst:
    # D is a combination of Euler maps, hence diagonal on monomials
    print("diag D:", [rows(x.maps["D"])[i][i] for i in range(x.dim)])

# %% [markdown]
# Climb from the binary bracket to 3- and 4-ary brackets and check each rung.

# %%
A = truncated_polynomial_algebra(["x", "y", "z"], [2, 2, 2])
A = A.with_op(derivation_bracket(A.ops["mul"], A.maps["E_x"]), "bracket")
rep = test_conjecture_ladder(A, 2, derivations=["E_y", "E_z"])
print("verdict:", rep.verdict, "arities:", [h.arity for h in rep.hits])
print(emit_report([rep], "ladder demo").decode()[:300])
