"""Walk through the two-lines construction: border rank 2w, rank 2d+3-2w.

Two lines meet at O. A degree-w jet sits at O on the first line, another at
a second point O2 on the other line; points B1, B2 are chosen on each line.
The spans of the jets and of the points meet in a line M, and a general
point of M is the witness.

    python demos/two_lines.py
"""

from __future__ import annotations

from symrank.binary import curve_point_rank
from symrank.certify import certify_border_rank, certify_sr_lower, falsification
from symrank.scheme import h01, intersection_degree
from symrank.geom import ReducibleConic
from symrank.scheme import Scheme
from symrank.strata import construct_two_lines

w, d = 3, 12
W = construct_two_lines(w, d, "o1")
p = W.parts
print(f"w={w} d={d}: deg A1={p['jet1'].degree} deg A2={p['jet2'].degree} |B1|={len(p['points1'])} |B2|={len(p['points2'])}")

Z = W.A.union(Scheme.from_points(W.B))
D = ReducibleConic(p["line1"], p["line2"])
print(f"deg(Z) = {Z.degree}, on L1 u L2: {intersection_degree(Z, D)}, h1(I_Z({d})) = {h01(Z, d).h1}")

res = curve_point_rank(p["partial_point"], p["line1"], d)
print(f"P' on the first line: border rank {res.border_rank}, rank {res.rank}")

print(f"border rank certificate: {certify_border_rank(W)['border_rank']}")
for item in certify_sr_lower(W)["checklist"]:
    print(f"  [{'ok' if item['ok'] else 'FAIL'}] {item['item']}: {item['value']}")
rep = falsification(W, budget=2000)
print(f"search for {W.r - 1} points spanning P: {rep['outcome']} after {rep['tests']} tests")
