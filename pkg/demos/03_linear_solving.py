# %% [markdown]
# Solving for structures
#
# Derivations and compatible products are the solutions of linear systems.
# They are solved exactly over the rationals.

# %%
from tpalg import (catalog_2d_derivation_induced, catalog_2d_transposed, compatible_symmetric_products,
                   derivation_space, filter_associative, invariant_fingerprint, op_from_terms)

for e in catalog_2d_derivation_induced():
    space = derivation_space(e.bundle, ["mul"])
    print(f"{e.id}: derivations of dimension {space.dimension}")

# %% [markdown]
# All symmetric products compatible with the bracket [e1,e2] = e2.

# %%
br = op_from_terms("bracket", 2, "alternating", 2, {(0, 1): {1: 1}})
space = compatible_symmetric_products(br, "transposed")
print("dimension:", space.dimension)
for m in space.members():
    print(" ", {f"e{i + 1}e{j + 1}": v.pretty() for (i, j), v in sorted(m.table.items())})
pts = [(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
print("associative points:", len(filter_associative(space, pts)), "of", len(pts))

# %% [markdown]
# Fingerprints tell the two-dimensional algebras apart.

# %%
for e in catalog_2d_transposed(verify=False):
    print(f"{e.id:14s}", invariant_fingerprint(e.bundle))
