"""Tour of the field towers: construction, arithmetic, and the maps that
drive everything else (Frobenius, norm, trace, square classes, the
(q+1)-st roots of unity).

Run:  python demos/01_field_towers.py
"""

from permtri import (
    frobenius,
    is_square,
    lift,
    make_field,
    mu_set,
    norm_trace,
    sqrt,
)

# GF(5) < GF(25): h = 1 so the middle layer is the prime field itself.
t = make_field(5, 1)
print(f"tower: {t}")
print(f"canonical modulus of GF(25) over GF(5): {t.fq2.modulus}  (t^2 + 2)")

# Elements are integers in disguise: index = c0 + c1 * 5 for c0 + c1*t.
x = t.fq2.elem(7)  # 2 + t
print(f"\nelement 7 has coefficients {[c.i for c in x.coeffs()]} (2 + 1*t)")
print(f"7 + 20 = {(x + t.fq2.elem(20)).i},  7 * 7 = {(x * x).i},  7^-1 = {x.inv().i}")

# Conjugation x -> x^q is a table lookup and matches the generic power.
print(f"\nfrobenius(7) = {frobenius(x).i},  7^5 = {(x ** 5).i}")
e = t.fq2.e
print(f"distinguished element e = t has index {e.i}; frobenius(e) = -e: {frobenius(e) == -e}")

# Norm and trace land in the subfield.
n, tr = norm_trace(x)
print(f"\nnorm(7) = {n.i} in GF(5), trace(7) = {tr.i} in GF(5)")

# Square classes by Euler's criterion; square roots pick the smaller index.
for i in range(5):
    print(f"square class of {i} in GF(5): {is_square(t.fq.elem(i))}")
r = sqrt(t.fq.elem(4))
print(f"sqrt(4) = {r.i} (the pair is 2 and 3; the smaller index wins)")

# The (q+1)-st roots of unity, the stage for the reduced permutation test.
mu = mu_set(t.fq2)
print(f"\nmu_6 in GF(25): {[m.i for m in mu]}")
print(f"every member satisfies x * x^q = 1: {all(frobenius(m) * m == t.fq2.one for m in mu)}")

# Bigger towers work the same way; GF(16) shows the characteristic-2 shape.
t16 = make_field(2, 4)
print(f"\n{t16}: GF(16) modulus over GF(2) is {t16.fq.modulus},"
      f" top modulus over GF(16) is {t16.fq2.modulus}")
u = t16.fq.elem(9)
print(f"lifting preserves the index: lift(9).i = {lift(u, t16.fq2).i}")
