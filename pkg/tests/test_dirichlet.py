import math

import pytest

from liouville import DomainError, dirichlet_eval, parse_prime_set, series_partial, zeta_em

ZETA2 = math.pi**2 / 6
ZETA4 = math.pi**4 / 90


class TestZeta:
    def test_basel(self):
        v, bound = zeta_em(2.0)
        assert abs(v - ZETA2) < 1e-13
        assert abs(v - ZETA2) <= bound + 1e-13

    def test_zeta_four(self):
        v, _ = zeta_em(4.0)
        assert abs(v - ZETA4) < 1e-13

    def test_against_slow_series(self):
        # independent oracle: direct series with integral tail estimate
        for s in (1.5, 2.0, 3.0, 7.5):
            n = 200_000
            direct = sum(k**-s for k in range(n, 0, -1)) + n ** (1 - s) / (s - 1)
            v, _ = zeta_em(s)
            assert v == pytest.approx(direct, abs=5e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            zeta_em(1.0)


class TestDirichletEval:
    def test_empty_set_is_zeta(self):
        ev = dirichlet_eval(2.0, "none", 100)
        assert abs(ev.value - ZETA2) < 1e-12
        assert ev.euler_factor == 1.0

    def test_single_prime_two(self):
        # exact factor (1 - 1/4)/(1 + 1/4) = 3/5
        ev = dirichlet_eval(2.0, "finite:2")
        assert abs(ev.value - ZETA2 * 3 / 5) < 1e-10
        assert ev.product_tail_bound == 0.0

    def test_two_primes(self):
        ev = dirichlet_eval(2.0, "finite:2,3")
        assert abs(ev.value - ZETA2 * (3 / 5) * (8 / 10)) < 1e-10

    def test_infinite_set_reports_tail(self):
        ev = dirichlet_eval(2.0, "all", 10**4)
        assert ev.product_tail_bound > 0
        assert ev.error_bound >= ev.product_tail_bound
        # zeta(s) * prod over all p of the factor is zeta(2s)/zeta(s)^... : at
        # s=2 the full product equals zeta(4)/zeta(2)^2 * zeta(2) = zeta(4)/zeta(2)
        assert abs(ev.value - ZETA4 / ZETA2) < ev.error_bound + 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            dirichlet_eval(1.0, "finite:2")
        with pytest.raises(DomainError):
            dirichlet_eval(2.0, "finite:2", truncation=1)


class TestSeriesPartial:
    def test_empty_series_is_zeta_partial(self):
        v, tail = series_partial(2.0, "none", 10**5)
        assert v == pytest.approx(sum(1.0 / n**2 for n in range(1, 10**5 + 1)), abs=1e-12)
        assert tail == pytest.approx(1e-5, rel=1e-9)

    def test_complement_product_identity(self):
        # the series over a set times the series over its complement is zeta(2s)
        for label, factor in (("finite:2", 3 / 5), ("finite:2,3", (3 / 5) * (8 / 10))):
            comp = f"complement:({label})"
            val, tail = series_partial(2.0, comp, 300_000)
            ev = dirichlet_eval(2.0, label)
            bound = tail * abs(ev.value) + ev.error_bound * (abs(val) + tail) + 1e-12
            assert abs(val * ev.value - ZETA4) <= bound

    def test_known_ratio(self):
        # zeta(4) divided by the series over {2} at s=2: 1.082323/0.986960
        ev = dirichlet_eval(2.0, "finite:2")
        assert ZETA4 / ev.value == pytest.approx(1.0966, abs=5e-4)
