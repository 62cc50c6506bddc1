"""Ranks of binary forms and of points on a rational normal curve.

    python demos/sylvester.py
"""

from __future__ import annotations

from fractions import Fraction

from symrank.binary import BinForm, rank_binary, waring_decomposition

# x^3 y: tangent to the rational normal quartic, rank 4 but border rank 2
print("x^3 y :", rank_binary((0, 1, 0, 0, 0)).to_json())

f = BinForm.power_sum(7, [(0, 1), (2, -1), (Fraction(1, 3), 4)])
print("3 powers:", rank_binary(f).to_json())
print("recovered terms (t, coefficient):", [(str(t), str(c)) for t, c in waring_decomposition(f)])

# jets at one point: rank + border rank = e + 2
for k in range(2, 5):
    res = rank_binary((1,) * (k - 1) + (2,) + (0,) * (9 - k))
    print(f"degree-{k} jet, e=9: border {res.border_rank}, rank {res.rank}")
