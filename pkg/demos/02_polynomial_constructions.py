# %% [markdown]
# Brackets built from derivations of a truncated polynomial algebra
#
# k[x,y]/(x^2, y^2) has basis 1, x, y, xy and comes with the Euler
# derivations E_x = x d/dx and E_y = y d/dy.

# %%
from tpalg import (LinearMap, check_identity, derivation_bracket, passes, three_lie_from_derivation,
                   three_lie_from_poisson, truncated_polynomial_algebra, two_derivation_bracket,
                   wedge_bracket)

A = truncated_polynomial_algebra(["x", "y"], [2, 2])
mul, Ex, Ey = A.ops["mul"], A.maps["E_x"], A.maps["E_y"]
print("basis:", A.space.labels)

# %% [markdown]
# x·D(y) - D(x)·y gives a bracket compatible with the product in the transposed sense.

# %%
br = derivation_bracket(mul, Ex)
B = A.with_op(br, "bracket")
print("transposed Poisson:", passes(B, "TransposedPoisson"))
print("[1,x] =", br(A.element("1"), A.element("x")).pretty(A.space))

# %% [markdown]
# A second derivation lifts the bracket to a ternary one.

# %%
mu = three_lie_from_derivation(mul, br, Ey)
print("[1,x,y] =", mu(*(A.element(s) for s in ("1", "x", "y"))).pretty(A.space))
T = B.with_op(mu, "mu")
for ax in ("fundamental_identity", "transposed_3lie"):
    print(f"{ax}: {check_identity(T, ax).holds}")

# %% [markdown]
# The determinant form with the identity map gives the same constants.

# %%
w = wedge_bracket([LinearMap.identity(4), Ex, Ey], mul)
print("determinant form agrees:", w.same_constants(mu))

# %% [markdown]
# Two commuting derivations give a Poisson bracket instead. Its ternary
# bracket satisfies the fundamental identity but not the mixed Poisson rule.

# %%
pb = two_derivation_bracket(mul, Ex, Ey)
P = A.with_op(three_lie_from_poisson(mul, pb), "mu")
print("fundamental identity:", check_identity(P, "fundamental_identity").holds)
r = check_identity(P, "poisson_3lie")
print("poisson_3lie:", r.holds, "first failure at", r.witness.labels)
