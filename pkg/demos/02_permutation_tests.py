"""The two permutation tests and why they agree.

f(X) = X (1 + a X^(q(q-1)) + b X^(2(q-1))) permutes GF(q^2) exactly when
the cubic fraction g(x) = (a^q x^3 + x^2 + b^q)/(b x^3 + x + a) permutes
the (q+1)-st roots of unity.  The direct test costs O(q^2) evaluations,
the reduced test O(q).

Run:  python demos/02_permutation_tests.py
"""

from permtri import TrinomialParams, f_eval, g_eval, is_pp_direct, is_pp_mu, make_field, mu_set

t = make_field(5, 1)

# A permutation instance (found by the closed-form criterion).
good = TrinomialParams.from_indices(t, 2, 3)
print("pair (a=2, b=3):")
print("  direct verdict:", is_pp_direct(good).to_json())
print("  reduced verdict:", is_pp_mu(good).to_json())

# A failing instance, with a re-checkable witness.
bad = TrinomialParams.from_indices(t, 1, 1)
v = is_pp_mu(bad)
print("\npair (a=1, b=1):")
print("  reduced verdict:", v.to_json())
x1, x2 = v.witness
print(f"  witness check: g({x1.i}) = {g_eval(bad, x1).i}, g({x2.i}) = {g_eval(bad, x2).i}")

# The degenerate family 1 + a + b = 0 collapses all of GF(q)* onto 0.
collapse = TrinomialParams.from_indices(t, 1, 3)
print("\npair (a=1, b=3) has 1 + a + b = 0:")
print("  images of GF(5)*:", sorted({f_eval(collapse, t.fq2.elem(i)).i for i in range(1, 5)}))
print("  verdict:", is_pp_direct(collapse).to_json())

# Exhaustive agreement of the two routes at q = 5.
n = t.fq2.order
agree = all(
    is_pp_direct(TrinomialParams.from_indices(t, a, b)).is_pp
    == is_pp_mu(TrinomialParams.from_indices(t, a, b)).is_pp
    for a in range(1, n)
    for b in range(1, n)
)
print(f"\ndirect == reduced on all {(n - 1) ** 2} pairs at q=5: {agree}")

# When the verdict is positive the image is the whole unity circle.
image = sorted(g_eval(good, x).i for x in mu_set(t.fq2))
print(f"image of mu_6 under g for (2,3): {image}")
