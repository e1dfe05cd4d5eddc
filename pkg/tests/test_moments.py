from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betawalk.exact import HalfInt, PiRational, beta_half, binomial
from betawalk.moments import (
    CoefficientVector,
    _lhs_raw,
    even_moment,
    lhs_master,
    odd_moment,
    rhs_master,
    verify_equal_coeff_form,
    verify_master,
)
from betawalk.walks import brute_force_return, return_probability

P_GRID = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]


def variance_oracle(p: Fraction) -> Fraction:
    # Var Be(a,b) = ab / ((a+b)^2 (a+b+1)), so E[U^2] = 4 Var(X) at a=b=p
    return 4 * (p * p) / ((2 * p) ** 2 * (2 * p + 1))


def uniform_moment_oracle(n: int) -> Fraction:
    # U uniform on [-1, 1]: E[U^2n] = 1/(2n+1)
    return Fraction(1, 2 * n + 1)


def test_even_moment_against_variance_oracle():
    for p in P_GRID:
        assert even_moment(1, p) == PiRational(variance_oracle(p))


def test_even_moment_examples():
    assert even_moment(2, "1/2") == PiRational(Fraction(3, 8))
    assert even_moment(3, 1) == PiRational(uniform_moment_oracle(3))
    assert even_moment(1, "1/2") == PiRational(Fraction(1, 2))


def test_even_moment_uniform_case():
    for n in range(1, 9):
        assert even_moment(n, 1) == PiRational(uniform_moment_oracle(n))


def test_even_moment_arcsine_closed_form():
    for n in range(1, 31):
        value = even_moment(n, "1/2")
        assert value.sqrt_pi_pow == 0
        assert value.coeff == Fraction(binomial(2 * n, n), 4 ** n)


def test_even_moment_quadrature_oracle():
    mpmath = pytest.importorskip("mpmath")
    with mpmath.workdps(40):
        for n, p in [(2, Fraction(3, 2)), (3, Fraction(1, 2)), (1, Fraction(2))]:
            pf = mpmath.mpf(p.numerator) / p.denominator
            density_norm = mpmath.beta(pf, pf)
            integral = mpmath.quad(
                lambda x: (2 * x - 1) ** (2 * n)
                * x ** (pf - 1) * (1 - x) ** (pf - 1),
                [0, 0.5, 1])
            expected = integral / density_norm
            got = even_moment(n, p)
            assert abs(float(got) - float(expected)) < 1e-25


def test_even_moment_validation():
    with pytest.raises(ValueError):
        even_moment(0, 1)
    with pytest.raises(ValueError):
        even_moment(2, "1/3")
    with pytest.raises(ValueError):
        even_moment(2, 0)


def test_odd_moment_is_exact_zero():
    assert odd_moment(0, "1/2") == PiRational.ZERO
    assert odd_moment(3, 1) == PiRational.ZERO
    assert odd_moment(5, "3/2") == PiRational.ZERO


def test_lhs_master_literal_three_term_sum():
    # n=1, c=[1], p=1: the sum has slots (j1, j2) with j1+j2 = 2
    b = lambda j: beta_half(HalfInt.of(j + 1), HalfInt.of(1))
    expected = (b(0) * 1 + b(1) * (2 * -2) + b(2) * 4) / beta_half(
        HalfInt.of(1), HalfInt.of(1))
    assert expected == PiRational(Fraction(1, 3))
    assert lhs_master(1, [1], 1) == expected


def test_lhs_master_matches_single_variable_moment():
    assert lhs_master(1, [1], "1/2") == even_moment(1, "1/2")
    for n in range(1, 5):
        for p in P_GRID:
            assert lhs_master(n, [1], p) == even_moment(n, p)


def test_lhs_master_two_equal_halves():
    assert lhs_master(1, ["1/2", "1/2"], "1/2") == PiRational(
        Fraction(binomial(2, 1) ** 2, 16))


def test_rhs_master_literal_evaluation():
    # n=1, c=[1], p=1: single index i1=1, term (1/2) * B(3/2, 1)
    expected = beta_half(HalfInt.of("3/2"), HalfInt.of(1)) / beta_half(
        HalfInt.of(1), HalfInt.of(1)) / 2
    assert expected == PiRational(Fraction(1, 3))
    assert rhs_master(1, [1], 1) == expected


def test_rhs_master_against_brute_force_walk_oracle():
    oracle = brute_force_return(3, 2)
    assert oracle.probability == Fraction(90, 1296)
    assert rhs_master(2, ["1/3"] * 3, "1/2") == PiRational(oracle.probability)


def test_verify_master_examples():
    rep = verify_master(3, [1, 2], "3/2")
    assert rep.verified and rep.mode == "exact"
    rep = verify_master(1, [1], 1)
    assert rep.verified
    assert rep.lhs == rep.rhs == PiRational(Fraction(1, 3))
    rep = verify_master(4, ["1/3"] * 3, "1/2")
    assert rep.verified
    assert rep.lhs == PiRational(return_probability(3, 4))


def test_verify_master_report_fields():
    rep = verify_master(2, ["1/2", "1/3"], "1/2")
    assert rep.parameters == {"n": "2", "k": "2", "p": "1/2",
                              "coeffs": "1/2,1/3"}
    obj = rep.to_json_obj()
    assert obj["verified"] is True
    assert obj["lhs"] == obj["rhs"]
    assert rep.elapsed >= 0.0


def test_master_identity_over_named_vectors():
    vectors = [
        (Fraction(1),),
        (Fraction(1), Fraction(1)),
        (Fraction(1, 2), Fraction(1, 3)),
        (Fraction(2), Fraction(1), Fraction(1)),
    ]
    for n in range(1, 5):
        for p in P_GRID:
            for coeffs in vectors:
                assert verify_master(n, coeffs, p).verified
            for k in range(1, 5):
                assert verify_master(n, (Fraction(1, k),) * k, p).verified


@given(st.fractions(min_value="1/20", max_value=20, max_denominator=20),
       st.integers(min_value=1, max_value=3))
@settings(max_examples=40, deadline=None)
def test_scaling_homogeneity(lam, n):
    base = (Fraction(1, 2), Fraction(2))
    scaled = tuple(lam * c for c in base)
    for p in (Fraction(1, 2), Fraction(2)):
        expected = lhs_master(n, base, p) * PiRational(lam ** (2 * n))
        assert lhs_master(n, scaled, p) == expected


def test_rhs_master_permutation_invariance():
    coeffs = (Fraction(1, 2), Fraction(1, 3), Fraction(3))
    permuted = (Fraction(3), Fraction(1, 2), Fraction(1, 3))
    for n in (1, 3):
        for p in P_GRID:
            assert rhs_master(n, coeffs, p) == rhs_master(n, permuted, p)


def test_zero_padding_shrinks_dimension():
    # dropping a slot (weight 0 in the raw expansion) equals the smaller-k sum
    c1, c2 = Fraction(1, 2), Fraction(2, 3)
    for n in (1, 2, 3):
        for p in P_GRID:
            p_half = HalfInt.of(p)
            padded = _lhs_raw(n, (c1, c2, Fraction(0)), p_half)
            plain = _lhs_raw(n, (c1, c2), p_half)
            # one extra B(p,p) factor comes from the dropped slot's j=0 term
            assert padded == plain * beta_half(p_half, p_half)
            assert (padded / beta_half(p_half, p_half) ** 3
                    == lhs_master(n, (c1, c2), p))


def test_moment_walk_correspondence_small():
    for k in range(1, 5):
        for n in range(1, 5):
            assert (rhs_master(n, (Fraction(1, k),) * k, "1/2")
                    == PiRational(return_probability(k, n)))


def test_threaded_sum_is_bit_identical():
    coeffs = (Fraction(1, 2), Fraction(1, 3), Fraction(1))
    for threads in (2, 3, 7):
        assert (lhs_master(4, coeffs, "3/2", threads=threads)
                == lhs_master(4, coeffs, "3/2"))
        assert (rhs_master(4, coeffs, "3/2", threads=threads)
                == rhs_master(4, coeffs, "3/2"))


def test_verify_equal_coeff_form():
    assert verify_equal_coeff_form(1, 2, "1/2").verified
    assert verify_equal_coeff_form(2, 1, 1).verified
    rep = verify_equal_coeff_form(1, 3, "1/2")
    assert rep.verified
    # value scales by k^(2n) relative to the 1/k-weight case
    scale = PiRational(Fraction(3 ** 2))
    assert (lhs_master(1, [1] * 3, "1/2")
            == lhs_master(1, [Fraction(1, 3)] * 3, "1/2") * scale)


def test_coefficient_vector_validation():
    with pytest.raises(ValueError):
        CoefficientVector.of([])
    with pytest.raises(ValueError):
        CoefficientVector.of([Fraction(1), Fraction(0)])
    with pytest.raises(ValueError):
        CoefficientVector.of([Fraction(-1)])
    vec = CoefficientVector.of(["1/2", "1/3"])
    assert vec.total == Fraction(5, 6)
    assert len(vec) == 2


def test_verify_master_float_dispatch():
    report = verify_master(1, [1.0], 1.0, mode="float")
    assert report.passed
    assert report.lhs == pytest.approx(1 / 3, rel=1e-12)
    with pytest.raises(ValueError):
        verify_master(1, [1], 1, mode="nonsense")
