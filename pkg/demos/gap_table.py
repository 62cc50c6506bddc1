"""Print the admissible ranks for a few (s, d) and certify one witness per band.

    python demos/gap_table.py
"""

from __future__ import annotations

from symrank.certify import certify
from symrank.strata import admissible, admissible_ranks, witness


def show_table(m, s, d):
    ranks = admissible_ranks(m, s, d)
    print(f"m={m} s={s} d={d}: r in {{{', '.join(map(str, ranks))}}}")
    missing = [r for r in range(s, 2 * d + s - 6) if r not in ranks]
    print(f"  no point of border rank {s} has rank {missing}")


def one_per_band(m, s, d):
    seen = set()
    for r in admissible_ranks(m, s, d):
        tag = admissible(m, s, d, r).tag
        if tag in seen:
            continue
        seen.add(tag)
        W = witness(m, s, d, r)
        cert = certify(W, falsify_budget=200)
        lower = cert["sr_lower"]
        print(
            f"  r={r:3d} {tag:<11} deg A={W.A.degree} |B|={len(W.B)} "
            f"flattening rank={cert['br_cert']['flattening_rank']} "
            f"checklist={len(lower['checklist'])} items -> {lower['conclusion']}"
        )


if __name__ == "__main__":
    for s, d in ((5, 12), (6, 14), (7, 16)):
        show_table(2, s, d)
    print("one certified witness per band, s=7 d=16:")
    one_per_band(2, 7, 16)
