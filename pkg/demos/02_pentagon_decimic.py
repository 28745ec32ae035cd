#!/usr/bin/env python3
"""The pentagon decimic and the scaling surprise.

The decimic with roots 1+5i, 1+6i, 2+6i, 3+3i, 6+i reduces to height
2,494,440 by shifts alone (center-of-mass shift 3, centroid shift 4, true
minimum at 5).  A rational rescaling x -> 2x then cuts the height by another
factor of five: scalings matter even for monic forms, where the classical
weighted-gcd scaling lemma can never fire.
"""

from formred import (BinaryForm, UhpPoint, from_upper_roots, height,
                     minimize, primitive, reduce_com, reduce_hyperbolic,
                     scale_search, shift, shift_descent)

roots = [UhpPoint(x, y) for x, y in ((1, 5), (1, 6), (2, 6), (3, 3), (6, 1))]
f = from_upper_roots(roots)
print("pentagon decimic height:", f"{height(f):,}")

for m in (3, 4, 5):
    print(f"  f(x + {m}y, y): height {height(shift(f, m)):>10,}")

print(f"\nreduce_com shift:        {reduce_com(f).matrix.b}")
print(f"reduce_hyperbolic shift: {reduce_hyperbolic(f).matrix.b}")

best_shift = shift_descent(shift(f, 4)).output
print(f"shift minimum: {height(best_shift):,}")

scaled = scale_search(best_shift)
print(f"\nscale_search on the shift minimum: lambda = {scaled.scale}, "
      f"height {scaled.output_height:,}")
print("scaled form:", scaled.output)

full = minimize(f)
print(f"\nfull pipeline: {full.input_height:,} -> {full.output_height:,} "
      f"(scale {full.scale})")

# The lambda = 2 certificate, by hand: substitute x -> 2x and divide by the
# content of the resulting integer form.
g = best_shift
n = g.degree
doubled = BinaryForm(tuple(c * 2 ** (n - i) for i, c in enumerate(g.coeffs)))
print("\nby hand: content of f(2x, y) is "
      f"{max(abs(a)//abs(b) for a, b in zip(doubled.coeffs, primitive(doubled).coeffs))}, "
      f"height {height(doubled):,}")
