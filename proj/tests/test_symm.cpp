#include <doctest.h>

#include "jh/symm.hpp"

using namespace jh;
using namespace jh::symm;

TEST_CASE("toy quadratic (y - 2)(y - 5)") {
  const Precision prec(7, 3, 2);
  const std::vector<E0Element> f{E0Element::constant(prec, 10), E0Element::constant(prec, -7),
                                 E0Element::constant(prec, 1)};
  const Elementary e = elementary_from_monic(f);
  CHECK(e.e[1] == E0Element::constant(prec, 7));
  CHECK(e.e[2] == E0Element::constant(prec, 10));
  const PowerSumTable n = power_sums_newton(e, 4);
  const PowerSumTable m = power_sums_multinomial(e, 4);
  const PowerSumTable t = power_sums_trace(f, 4);
  const long expected[] = {2, 7, 29, 133, 641};  // 2^k + 5^k
  for (int k = 0; k <= 4; ++k) {
    CHECK(n.at(k) == E0Element::constant(prec, expected[k]));
    CHECK(m.at(k) == n.at(k));
    CHECK(t.at(k) == n.at(k));
  }
}

TEST_CASE("first Newton identities on q0") {
  const Precision prec(3, 4, 5);
  const auto w = sigmap::weierstrass_of_p_series(prec);
  const Elementary e = elementary_from_weierstrass(w);
  CHECK(e.e[1] == -w.coefficient(1));
  CHECK(e.e[4] == w.coefficient(4));
  const PowerSumTable s = power_sums_newton(e, 2);
  CHECK(s.at(0) == E0Element::constant(prec, 4));
  CHECK(s.at(1) == -w.coefficient(1));
  CHECK(s.at(2) == w.coefficient(1) * w.coefficient(1) - BigInt(2) * w.coefficient(2));
}

TEST_CASE("three routes agree on q0") {
  for (int p : {3, 5, 7}) {
    const Precision prec(p, 5, 6);
    const auto w = sigmap::weierstrass_of_p_series(prec);
    const Elementary e = elementary_from_weierstrass(w);
    const int k_max = 2 * p + 2 + 2 * p;
    const PowerSumTable n = power_sums_newton(e, k_max);
    const PowerSumTable m = power_sums_multinomial(e, std::min(k_max, kMultinomialCap));
    const PowerSumTable t = power_sums_trace(w, k_max);
    CHECK(t.at(0) == E0Element::constant(prec, p + 1));
    for (int k = 1; k <= k_max; ++k) {
      CHECK(n.at(k) == t.at(k));
      if (k <= m.bound()) CHECK(n.at(k) == m.at(k));
      CHECK(n.at(k).p_valuation() >= Valuation(1));
      const auto c = n.at(k).coefficients();
      for (std::size_t u = 0; u < c.size(); ++u)
        if (c[u] != 0) CHECK((k + static_cast<int>(u)) % (p + 1) == 0);
    }
  }
}

TEST_CASE("multinomial cap") {
  const Precision prec(3, 2, 2);
  const std::vector<E0Element> f{E0Element::constant(prec, 1), E0Element::constant(prec, 1)};
  CHECK_THROWS_AS(power_sums_multinomial(elementary_from_monic(f), 41), std::invalid_argument);
}

TEST_CASE("binomial valuations") {
  CHECK(nu_p_binomial(3, 3, 1) == 1);
  // C(10, 5) = 252 = 2^2 3^2 7
  CHECK(nu_p_binomial(5, 10, 5) == 0);
  CHECK(nu_p_binomial(3, 10, 5) == 2);
  CHECK(nu_p_binomial(7, 49, 1) == 2);
  CHECK_THROWS_AS(nu_p_binomial(3, 4, 5), std::invalid_argument);
  for (long p : {3, 5, 7})
    for (long s = 0; s <= 100; ++s)
      for (long r = 0; r <= s; ++r) {
        BigInt c;
        mpz_bin_uiui(c.get_mpz_t(), s, r);
        CHECK(Valuation(nu_p_binomial(p, s, r)) == p_valuation(c, p));
      }
}

TEST_CASE("binomial valuation is at most log_p s") {
  for (long p : {3, 5, 7})
    for (long s = 1; s <= 500; ++s) {
      int floor_log = 0;
      for (long q = p; q <= s; q *= p) ++floor_log;
      for (long r = 0; r <= s; ++r) REQUIRE(nu_p_binomial(p, s, r) <= floor_log);
    }
}

TEST_CASE("factorial valuations") {
  CHECK(factorial_valuation(3, 10) == 4);
  CHECK(factorial_valuation(5, 100) == 24);
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), 60);
  CHECK(p_valuation(f, 7) == Valuation(static_cast<int>(factorial_valuation(7, 60))));
}

TEST_CASE("term breakdown") {
  const TermBreakdown a = term_breakdown(3, 1, 0);
  CHECK(a.k == 4);
  CHECK(a.scalar == 4);
  CHECK(a.scalar_valuation == 0);
  CHECK(a.contribution_p_valuation == 0);
  // (1, j - 1): k = pj + 1 and the scalar is k
  const TermBreakdown b = term_breakdown(5, 1, 2);
  CHECK(b.k == 16);
  CHECK(b.scalar == 16);
  CHECK(b.scalar_valuation == 0);
  // (i + 1, j - i - 1) with p^i | j: k = pj + i + 1, contribution p^i * unit
  const TermBreakdown c = term_breakdown(3, 2, 1);
  CHECK(c.k == 11);
  CHECK(c.scalar == 11);
  CHECK(c.contribution_p_valuation == 1);
  const TermBreakdown d = term_breakdown(5, 2, 3);
  CHECK(d.k == 27);
  CHECK(d.scalar == 54);
  CHECK(d.scalar_valuation == 0);
  const TermBreakdown e = term_breakdown(3, 3, 6);
  CHECK(e.k == 30);
  CHECK(e.scalar == 280);
  CHECK(e.contribution_p_valuation == 2);
  CHECK_THROWS_AS(term_breakdown(3, 0, 0), std::invalid_argument);
}

TEST_CASE("term scalar is an integer") {
  for (int p : {3, 5, 7})
    for (int s = 0; s <= 12; ++s)
      for (int t = 0; t <= 12; ++t)
        if (s + t > 0) {
          const TermBreakdown b = term_breakdown(p, s, t);
          CHECK(Valuation(b.scalar_valuation) == p_valuation(b.scalar, p));
        }
}
