#!/usr/bin/env python3
"""Binary quadratics: the zero map, reduction, and class numbers.

Positive definite integer quadratics [a, b, c] correspond one-to-one to
points of the upper half-plane via (-b/2a, sqrt(|D|)/2a); reduction moves
that point into the fundamental domain |Re z| <= 1/2, |z| >= 1, and the
reduced representative satisfies |b| <= a <= c.
"""

from formred import (QuadraticForm, enumerate_reduced, q_discriminant,
                     q_reduce, q_transform, q_zero_map)

Q = QuadraticForm(5, 4, 1)
z = q_zero_map(Q)
print(f"Q = {Q}, disc {q_discriminant(Q)}, zero map ({float(z.t)}, {z.u:.6f})")

R, M = q_reduce(Q)
zr = q_zero_map(R)
print(f"reduced: {R} via [[{M.a},{M.b}],[{M.c},{M.d}]], "
      f"zero ({float(zr.t)}, {zr.u:.6f})")
assert q_transform(Q, M) == R

print("\nreduced forms by discriminant (primitive count = class number):")
for D in (3, 4, 23, 47, 71, 163):
    forms = enumerate_reduced(D, primitive_only=True)
    listing = ", ".join(str(F) for F in forms)
    print(f"  D = -{D:<3}  h = {len(forms)}   {listing}")
