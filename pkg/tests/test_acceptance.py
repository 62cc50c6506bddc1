"""Acceptance criteria: one [PASS]/[FAIL] line per criterion, exact checks only."""

from __future__ import annotations

import pytest

import symrank.binary
from symrank import selftest
from symrank.cli import main
from symrank.exact import Matrix
from symrank.strata import admissible


@pytest.fixture(scope="module")
def ctx():
    c = selftest.Context(seed=selftest.SEED)
    c.build()
    return c


@pytest.mark.parametrize("cid", sorted(selftest.CRITERIA))
def test_criterion(cid, ctx, capsys):
    result = selftest.CRITERIA[cid](ctx)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.id == cid
    assert result.passed, result.line()


def test_table_is_exact(ctx):
    for (m, s, d), expected in selftest.EXPECTED_TABLE.items():
        assert tuple(r for r in range(s, 2 * d + s - 6) if admissible(m, s, d, r).admissible) == expected
    assert len(ctx.certificates) == sum(len(v) for v in selftest.EXPECTED_TABLE.values())
    for (m, s, d, r), cert in ctx.certificates.items():
        assert cert["br_cert"]["border_rank"] == s
        assert cert["sr_upper"]["B_size"] == r
        assert cert["falsification"]["outcome"] == "exhausted"


def test_broken_hankel_is_caught(monkeypatch, capsys):
    # mutation canary: an off-by-one catalecticant must make the Sylvester criterion fail
    def broken(f, k):
        a = symrank.binary._coeffs(f)
        e = len(a) - 1
        return Matrix(tuple(tuple(a[min(i + j + 1, e)] for j in range(k + 1)) for i in range(e - k + 1)), k + 1)

    monkeypatch.setattr(symrank.binary, "hankel", broken)
    assert main(["selftest", "--only", "2"]) != 0
    assert "[FAIL] criterion 2" in capsys.readouterr().out
