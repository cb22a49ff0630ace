# %% [markdown]
# Checking identities on small algebras
#
# A bundle holds a commutative product `mul` and a skew bracket `bracket`,
# both given by structure constants. The engine checks an identity on every
# basis tuple and reports the first failing tuple if there is one.

# %%
from tpalg import catalog_entry, check_identity, check_profile, evaluate_identity

d = catalog_entry("nonabelian-d").bundle
for report in check_profile(d, "TransposedPoisson"):
    print(f"{report.axiom:20s} holds={report.holds}  tuples={report.tuples_checked}")

# %% [markdown]
# The same bracket with a different product can break the Leibniz rule.
# The witness records the basis tuple and both sides of the equation.

# %%
c = catalog_entry("nonabelian-c").bundle
r = check_identity(c, "leibniz")
w = r.witness
print("leibniz holds:", r.holds)
print("at", w.labels, "left", w.left.pretty(c.space), "right", w.right.pretty(c.space))

# %% [markdown]
# Any tuple can be evaluated by hand, which is handy for replaying a witness.

# %%
for eq, (left, right) in enumerate(evaluate_identity(c, "leibniz", (0, 1, 1))):
    print(eq, left.pretty(c.space), "vs", right.pretty(c.space))
