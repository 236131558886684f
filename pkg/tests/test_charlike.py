import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville import (
    CharacterTable,
    DomainError,
    ResourceLimitError,
    ValidationError,
    character_profile,
    classify_lplus,
    lambda_p,
    lambda_p_prime,
    legendre,
    llp_identity_check,
    lmax,
    log_bound_scan,
    max_abs_summatory,
    summatory_char,
    summatory_digit,
    summatory_digit_batch,
    summatory_sieve,
)
from liouville.arith import factorize, is_prime

L_PLUS_UP_TO_260 = [3, 7, 11, 23, 31, 47, 59, 71, 79, 83, 103, 131, 151, 167, 191, 199, 239, 251]


class TestProfile:
    def test_five(self):
        prof = character_profile(5)
        assert prof.values.tolist() == [0, 1, -1, -1, 1]
        assert prof.prefix_sums.tolist() == [0, 1, 0, -1, 0]
        assert prof.max_abs == 1
        assert not prof.all_nonneg
        assert prof.argmax_digits == (1, 3)

    def test_seven(self):
        prof = character_profile(7)
        assert prof.prefix_sums.tolist() == [0, 1, 2, 1, 2, 1, 0]
        assert prof.max_abs == 2
        assert prof.all_nonneg
        assert prof.argmax_digits == (2, 4)

    def test_invariants_sampled(self):
        for p in (3, 5, 11, 101, 997, 65537):
            prof = character_profile(p)
            assert prof.prefix_sums[0] == 0
            assert prof.prefix_sums[-1] == 0
            assert prof.values[0] == 0
            assert prof.max_abs >= 1

    def test_rejects_two_and_composites(self):
        with pytest.raises(DomainError):
            character_profile(2)
        with pytest.raises(DomainError):
            character_profile(15)


class TestLambdaP:
    def test_fixed_point_is_one(self):
        for p in (3, 5, 7, 11, 31):
            assert lambda_p(p, p) == 1

    def test_five_at_three(self):
        assert lambda_p(3, 5) == -1

    def test_three_at_thirteen(self):
        # 13 = 1 mod 3
        assert lambda_p(13, 3) == 1

    def test_agrees_with_legendre_off_p(self):
        for p in (3, 5, 7, 11):
            for n in range(1, 400):
                if n % p:
                    assert lambda_p(n, p) == legendre(n, p)

    def test_big_integer_argument(self):
        n = 10**60 + 7
        v = lambda_p(str(n), 7)
        assert v == legendre(n % 7, 7)

    def test_domain(self):
        with pytest.raises(DomainError):
            lambda_p(0, 5)
        with pytest.raises(DomainError):
            lambda_p(10, 2)

    @given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=200, deadline=None)
    def test_completely_multiplicative(self, m, n):
        p = 7
        assert lambda_p(m * n, p) == lambda_p(m, p) * lambda_p(n, p)


class TestLambdaPPrime:
    def test_fixed_point(self):
        for p in (3, 5, 7):
            assert lambda_p_prime(p, p) == 1

    def test_five_at_two(self):
        # -(2/5) = 1
        assert lambda_p_prime(2, 5) == 1

    def test_three_at_four(self):
        # 4 = 2^2; (-(2/3))^2 = 1
        assert lambda_p_prime(4, 3) == 1

    def test_multiplicative_from_factorization(self):
        rng = random.Random(5)
        for _ in range(200):
            m, n = rng.randint(1, 10**4), rng.randint(1, 10**4)
            assert lambda_p_prime(m * n, 7) == lambda_p_prime(m, 7) * lambda_p_prime(n, 7)

    def test_width_cap(self):
        with pytest.raises(ResourceLimitError):
            lambda_p_prime(2**70, 5)


class TestSignFactorization:
    def test_at_p(self):
        chk = llp_identity_check(3, 3)
        assert (chk.k, chk.liouville, chk.char_like, chk.char_like_prime) == (1, -1, 1, 1)
        assert chk.holds

    def test_at_other_prime(self):
        chk = llp_identity_check(11, 3)
        assert chk.k == 0 and chk.liouville == -1
        assert chk.holds

    def test_twelve_base_three(self):
        chk = llp_identity_check(12, 3)
        assert chk.k == 1
        assert chk.liouville == -1
        assert chk.holds

    def test_identity_exhaustive(self):
        for p in (3, 5, 7, 11, 13):
            for n in range(1, 10**4 + 1):
                assert llp_identity_check(n, p).holds


class TestSummatoryDigit:
    def test_paper_small_values(self):
        # L_5(3) = 1 - 1 - 1
        assert summatory_digit(3, 5) == -1
        # 13 = 111 base 3: three ones
        assert summatory_digit(13, 3) == 3
        # 93 = 333 base 5: ones minus threes = -3
        assert summatory_digit(93, 5) == -3

    def test_zero(self):
        assert summatory_digit(0, 5) == 0

    def test_full_period_is_zero(self):
        for p in (3, 5, 7, 11):
            assert summatory_digit(p - 1, p) == 0

    def test_decimal_string_huge(self):
        n = "1" + "0" * 80
        assert summatory_digit(n, 3) == summatory_digit(int(n), 3)

    def test_batch_matches_scalar(self):
        for p in (3, 5, 7, 13):
            batch = summatory_digit_batch(500, p)
            for n in (1, 2, 17, 499, 500):
                assert batch[n - 1] == summatory_digit(n, p)


class TestSummatorySieve:
    def test_examples(self):
        assert summatory_sieve(3, 5).value == -1
        assert summatory_sieve(13, 3).value == 3
        for p in (3, 5, 7, 11):
            assert summatory_sieve(p - 1, p).value == 0

    def test_matches_pointwise(self):
        for p in (3, 5, 7):
            x = 3000
            path = summatory_sieve(x, p, with_path=True).path
            direct = np.cumsum([lambda_p(n, p) for n in range(1, x + 1)])
            assert np.array_equal(path, direct)

    def test_digit_formula_agreement_small(self):
        for p in (3, 5, 31, 47):
            x = 2000
            assert np.array_equal(
                summatory_digit_batch(x, p), summatory_sieve(x, p, with_path=True).path
            )

    def test_segmented_path_consistency(self):
        # cross the segment boundary without a path
        x = (1 << 20) + 4321
        assert summatory_sieve(x, 3).value == summatory_digit(x, 3)

    def test_trace_invariants(self):
        tr = summatory_sieve(10**4, 7, with_path=True)
        assert abs(tr.value) <= tr.x
        assert (tr.value - tr.x) % 2 == 0
        assert np.all(np.abs(np.diff(tr.path)) == 1)

    def test_nonneg_for_three_small(self):
        tr = summatory_sieve(10**4, 3, with_path=True)
        assert tr.running_min >= 0


class TestCharacterTable:
    def test_quadratic_specialization(self):
        t = CharacterTable.quadratic(5)
        assert summatory_char(93, t) == -3
        assert summatory_char(3, t) == summatory_digit(3, 5)

    def test_principal_rejected(self):
        chi = np.ones(5, dtype=np.complex128)
        chi[0] = 0
        with pytest.raises(ValidationError):
            CharacterTable(5, chi)

    def test_non_multiplicative_rejected(self):
        chi = np.array([0, 1, 1, -1, -1], dtype=np.complex128)
        with pytest.raises(ValidationError):
            CharacterTable(5, chi)

    def test_nonzero_at_zero_rejected(self):
        t = character_profile(5).values.astype(np.complex128).copy()
        t[0] = 1
        with pytest.raises(ValidationError):
            CharacterTable(5, t)

    @staticmethod
    def _order_character(p, g, order):
        # character of given order from a primitive root g mod p
        chi = np.zeros(p, dtype=np.complex128)
        val = 1
        root = np.exp(2j * np.pi / order)
        e = 0
        for _ in range(p - 1):
            chi[val] = root ** (e % order)
            val = val * g % p
            e += 1
        return chi

    def test_real_nonprincipal_mod7_matches_direct_sum(self):
        t = CharacterTable.quadratic(7)

        def f(j):
            while j % 7 == 0:
                j //= 7
            return int(character_profile(7).values[j % 7])

        acc = 0
        for n in range(1, 10**4 + 1):
            acc += f(n)
            assert summatory_char(n, t) == acc

    def test_complex_character_mod7(self):
        # 3 is a primitive root mod 7; take the order-6 character
        chi = self._order_character(7, 3, 6)
        t = CharacterTable(7, chi)
        assert not t.is_real

        def f(j):
            while j % 7 == 0:
                j //= 7
            return chi[j % 7]

        acc = 0j
        for n in range(1, 2000):
            acc += f(n)
            assert summatory_char(n, t) == pytest.approx(acc, abs=1e-9)


class TestClassify:
    def test_paper_list(self):
        assert classify_lplus(260) == L_PLUS_UP_TO_260

    def test_five_not_member(self):
        assert 5 not in classify_lplus(100)
        assert summatory_sieve(3, 5).value == -1

    def test_brute_force_crosscheck(self):
        # independent route: raw Euler-criterion sums, early negative exit
        expected = []
        for p in range(3, 400, 2):
            if not is_prime(p):
                continue
            s, ok = 0, True
            for l in range(1, p):
                s += legendre(l, p)
                if s < 0:
                    ok = False
                    break
            if ok:
                expected.append(p)
        assert classify_lplus(400) == expected

    def test_members_are_three_mod_four(self):
        assert all(p % 4 == 3 for p in classify_lplus(2000))

    def test_domain(self):
        with pytest.raises(DomainError):
            classify_lplus(2)


class TestLmax:
    def test_three(self):
        for i in range(1, 6):
            ext = lmax(3, i)
            assert ext.max_value == i
            # witness is the base-3 repunit
            assert ext.witnesses == ((3**i - 1) // 2,)

    def test_five_squared(self):
        ext = lmax(5, 2)
        assert ext.max_value == 2
        assert ext.witnesses == (6, 18)

    def test_seven_single_digit(self):
        assert lmax(7, 1).max_value == 2

    def test_exhaustive_small(self):
        for p, i in ((3, 3), (5, 2), (7, 2), (11, 2), (13, 1)):
            path = summatory_sieve(p**i - 1, p, with_path=True).path
            assert lmax(p, i).max_value == int(np.abs(path).max())

    def test_witness_attains_value(self):
        for p, i in ((3, 4), (5, 3), (7, 2), (23, 2)):
            ext = lmax(p, i)
            for w in ext.witnesses:
                assert abs(summatory_digit(w, p)) == ext.max_value

    def test_domain(self):
        with pytest.raises(DomainError):
            lmax(5, 0)


class TestSelfSimilarity:
    def test_digit_route(self):
        for p in (3, 5, 7, 11):
            for r in range(1, 7):
                for n in (1, 2, 17, 999):
                    assert summatory_digit(p**r * n, p) == summatory_digit(n, p)

    def test_sieve_route_small(self):
        for n in range(1, 120):
            assert summatory_sieve(3 * n, 3).value == summatory_sieve(n, 3).value


class TestMaxAbsDP:
    def test_matches_running_scan(self):
        for p in (3, 5, 7, 11, 13):
            x = 5000
            path = summatory_sieve(x, p, with_path=True).path
            run = np.maximum.accumulate(np.abs(path))
            for t in (1, 2, 3, 10, 48, 100, 2401, 4999, 5000):
                assert max_abs_summatory(t, p) == int(run[t - 1])

    @given(st.integers(min_value=1, max_value=20000), st.sampled_from([3, 5, 7, 11, 19]))
    @settings(max_examples=120, deadline=None)
    def test_random_points(self, t, p):
        path = summatory_sieve(20000, p, with_path=True).path
        assert max_abs_summatory(t, p) == int(np.abs(path[:t]).max())

    def test_huge_argument(self):
        # exact at sizes no sieve can reach
        assert max_abs_summatory(10**18, 3) == max_abs_summatory(10**18, 3)
        assert max_abs_summatory((3**40 - 1) // 2, 3) == 40


class TestLogBoundScan:
    def test_three_counts_repunits(self):
        # max count of ones below t is the largest m with (3^m - 1)/2 <= t
        for rec in log_bound_scan(3, 10**6):
            m = 0
            while (3 ** (m + 1) - 1) // 2 <= rec.t:
                m += 1
            assert rec.max_abs == m

    def test_ratio_bounded_for_five(self):
        records = log_bound_scan(5, 10**6)
        ratios = [r.ratio for r in records]
        assert all(0.3 <= r <= 1.5 for r in ratios)

    def test_growth_bound_violation_exists(self):
        # at p = 7 the two-digit witness 16 = (2,2) base 7 already exceeds
        # floor(log_7 n) + 1
        assert abs(summatory_digit(16, 7)) == 4
        assert 4 > math.floor(math.log(16, 7)) + 1
        recs = log_bound_scan(7, 10**4)
        assert any(
            rec.max_abs > math.floor(math.log(rec.t, 7)) + 1 for rec in recs
        )

    def test_extends_past_sieve_budget(self):
        recs = log_bound_scan(7, 10**15)
        assert recs[-1].t == 10**15
        assert recs[-1].max_abs >= recs[0].max_abs
