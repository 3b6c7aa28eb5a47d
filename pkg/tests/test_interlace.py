from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poly
from interlace_checker.errors import DegreeMismatchError, ZeroPolynomialError
from interlace_checker.generator import pair_from_chain, swap_adjacent
from interlace_checker.interlace import (
    Consistency, InterlaceVerdict, default_alphas, hko_crosscheck, interlaces_by_roots,
    interlaces_exact, pencil_scan,
)
from interlace_checker.poly_core import Polynomial, lin_comb
from interlace_checker.real_roots import is_real_rooted, isolate_roots

SMALL_ALPHAS = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 10, -10, 100, -100)

roots = st.fractions(min_value=-10, max_value=10, max_denominator=4)
chains = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(roots, min_size=2 * n - 1, max_size=2 * n - 1).map(sorted)
)


def by_roots(r, s, strict=False):
    return interlaces_by_roots(
        isolate_roots(Polynomial.from_roots(r)), isolate_roots(Polynomial.from_roots(s)), strict=strict,
    )


@pytest.mark.parametrize('r, s, expected', [
    ([-1, 1], [0], InterlaceVerdict.INTERLACES),
    ([0, 2], [3], InterlaceVerdict.DOES_NOT_INTERLACE),
    ([0, 0], [0], InterlaceVerdict.INTERLACES),
    ([1, 2, 3], [Fraction(3, 2), Fraction(5, 2)], InterlaceVerdict.INTERLACES),
    ([1, 2, 3], [2, 2], InterlaceVerdict.INTERLACES),
    ([1, 2, 3], [Fraction(5, 2), Fraction(3, 2)], InterlaceVerdict.INTERLACES),
    ([1, 2, 3], [0, 4], InterlaceVerdict.DOES_NOT_INTERLACE),
    ([1, 2], [0, 4], InterlaceVerdict.DEGREE_MISMATCH),
])
def test_interlaces_by_roots(r, s, expected):
    assert by_roots(r, s).verdict == expected


def test_failure_witness_names_broken_link():
    report = by_roots([0, 2], [3])
    assert report.failure_witness == (1, 1)
    assert report.failure_detail == 's_1 > r_2'
    assert report.chain_certificate is None


def test_chain_certificate_lists_merged_order():
    report = by_roots([-1, 1], [0])
    assert report.failure_witness is None
    assert [entry.label for entry in report.chain_certificate] == ['r_1', 's_1', 'r_2']
    assert [entry.owner for entry in report.chain_certificate] == ['f', 'g', 'f']
    for entry, root in zip(report.chain_certificate, (-1, 0, 1)):
        assert entry.lo < root < entry.hi


def test_strict_rejects_shared_roots():
    assert by_roots([0, 0], [0], strict=True).failure_detail == 'r_1 = s_1'
    assert by_roots([-1, 1], [0], strict=True).interlaces


def test_close_roots_are_separated_by_refinement():
    eps = Fraction(1, 10 ** 9)
    assert by_roots([0, 1], [eps]).interlaces
    assert not by_roots([0, 1], [-eps]).interlaces


def test_irrational_shared_roots_are_certified_equal():
    # roots of x^2 - 2 appear in both
    f = poly(1, 0, -2) * poly(1, 0)
    g = poly(1, 0, -2)
    assert interlaces_exact(f, g).interlaces
    assert not interlaces_exact(f, g, strict=True).interlaces


@pytest.mark.parametrize('f, g, expected', [
    (poly(1, 0, -1), poly(1, 0), InterlaceVerdict.INTERLACES),
    (poly(1, -2, 0), poly(1, -3), InterlaceVerdict.DOES_NOT_INTERLACE),
    (Polynomial.from_roots([1, 2, 3]), Polynomial.from_roots([Fraction(3, 2), Fraction(5, 2)]),
     InterlaceVerdict.INTERLACES),
    (poly(1, 0, -1), poly(1, 0, 0), InterlaceVerdict.DEGREE_MISMATCH),
    (poly(1, 0, 1), poly(1, 0), InterlaceVerdict.NOT_REAL_ROOTED),
])
def test_interlaces_exact(f, g, expected):
    assert interlaces_exact(f, g).verdict == expected


def test_not_real_rooted_names_offender():
    report = interlaces_exact(poly(1, 0, -1) * poly(1, -1), poly(1, 0, 1))
    assert report.not_real_rooted == ('g',)


def test_interlaces_exact_rejects_zero():
    with pytest.raises(ZeroPolynomialError):
        interlaces_exact(Polynomial(), poly(1))


def test_leading_signs_are_flagged():
    report = interlaces_exact(-poly(1, 0, -1), poly(1, 0))
    assert report.interlaces
    assert report.leading_signs == (-1, 1)
    assert report.opposite_leading_signs
    assert not interlaces_exact(poly(1, 0, -1), poly(1, 0)).opposite_leading_signs


def test_report_json():
    data = interlaces_exact(poly(1, -2, 0), poly(1, -3)).to_json()
    assert data['verdict'] == 'DoesNotInterlace'
    assert data['failure_witness'] == [1, 1]
    assert data['chain_certificate'] is None


def test_pencil_scan_finds_witness():
    report = pencil_scan(poly(1, -2, 0), poly(1, -3), [0, 1, -1, -2])
    assert report.witness == -1
    assert not report.all_real
    assert report.failure_count == 2
    assert report.witness in report.alphas_tested
    assert not is_real_rooted(lin_comb(poly(1, -2, 0), poly(1, -3), -1))


def test_pencil_scan_degree_one():
    report = pencil_scan(poly(1, 0), poly(1), SMALL_ALPHAS)
    assert report.all_real
    assert report.witness is None


def test_pencil_scan_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        pencil_scan(poly(1, 0, -1), poly(1, 0, 0), SMALL_ALPHAS)


def test_default_alphas():
    alphas = default_alphas()
    for alpha in (0, Fraction(1, 2), Fraction(-1, 2), 1, -1, 1024, -1024):
        assert alpha in alphas
    assert len(alphas) == len(set(alphas))
    assert 64 < len(alphas) <= 25 + 64
    assert default_alphas(seed=5) == default_alphas(seed=5)
    assert default_alphas(seed=5) != default_alphas(seed=6)
    assert len(default_alphas(count=0)) == 25


@pytest.mark.parametrize('f, g, expected', [
    (poly(1, 0, -1), poly(1, 0), Consistency.CONSISTENT),
    (poly(1, -2, 0), poly(1, -3), Consistency.CONSISTENT),
    (Polynomial.from_roots([1, 2, 3]), Polynomial.from_roots([Fraction(3, 2), Fraction(5, 2)]),
     Consistency.CONSISTENT),
])
def test_hko_crosscheck(f, g, expected):
    check = hko_crosscheck(f, g)
    assert check.consistency == expected
    assert check.is_consistent


def test_hko_crosscheck_witness_for_non_interlacing_pair():
    check = hko_crosscheck(poly(1, -2, 0), poly(1, -3))
    assert check.interlace.verdict == InterlaceVerdict.DOES_NOT_INTERLACE
    assert check.pencil.witness is not None


def test_hko_crosscheck_unfalsified_without_witness():
    check = hko_crosscheck(poly(1, -2, 0), poly(1, -3), alphas=[0, 1])
    assert check.consistency == Consistency.CONSISTENT_UNFALSIFIED
    assert check.is_consistent


@settings(max_examples=50, deadline=None)
@given(chains)
def test_constructed_chains_interlace(chain):
    f, g = pair_from_chain(chain)
    assert interlaces_exact(f, g).interlaces


@settings(max_examples=40, deadline=None)
@given(chains)
def test_interlacing_pencils_are_real_rooted(chain):
    f, g = pair_from_chain(chain)
    assert pencil_scan(f, g, SMALL_ALPHAS).all_real


@settings(max_examples=40, deadline=None)
@given(chains, st.data())
def test_witness_implies_not_interlacing(chain, data):
    candidates = [i for i in range(len(chain) - 1) if chain[i] != chain[i + 1]]
    if not candidates:
        return
    f, g = swap_adjacent(chain, data.draw(st.sampled_from(candidates)))
    report = interlaces_exact(f, g)
    assert not report.interlaces
    check = hko_crosscheck(f, g, SMALL_ALPHAS)
    assert check.consistency != Consistency.INCONSISTENT


@settings(max_examples=40, deadline=None)
@given(chains, roots, st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_verdict_invariant_under_shift_and_scale(chain, t, c):
    f, g = pair_from_chain(chain)
    verdict = interlaces_exact(f, g).verdict
    assert interlaces_exact(f.shift(t), g.shift(t)).verdict == verdict
    assert interlaces_exact(f * c, g * (c + 1)).verdict == verdict


@pytest.mark.parametrize('r, s', [
    ([-1, 1, 5], [0, 5]),
    ([-1, 1, -5], [0, -5]),
    ([0, 0, 7], [0, 7]),
])
def test_shared_root_keeps_interlacing(r, s):
    assert by_roots(r, s).verdict == InterlaceVerdict.INTERLACES


@settings(max_examples=40, deadline=None)
@given(chains, roots)
def test_common_factor_preserves_interlacing(chain, t):
    f, g = pair_from_chain(chain)
    factor = Polynomial.from_roots([t])
    assert interlaces_exact(f * factor, g * factor).verdict == InterlaceVerdict.INTERLACES
