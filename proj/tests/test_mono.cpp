#include <doctest.h>

#include "jh/mono.hpp"
#include "jh/selfcheck.hpp"

using namespace jh;
using namespace jh::mono;

namespace {

using Support = std::vector<MElement::Key>;

}  // namespace

TEST_CASE("MElement normal form") {
  MElement a(3);
  a.add_term(2, 1, 3);  // 3/(9 v1) = 1/(3 v1)
  CHECK(a.terms() == std::map<MElement::Key, BigInt>{{{1, 1}, 1}});
  a.add_term(1, 1, 2);  // 1/3 + 2/3 = 0
  CHECK(a.is_zero());
  MElement b(3);
  b.add_term(1, 2, 4);  // 4/3 = 1/3 mod Z
  b.add_term(2, 2, 1);  // 1/3 + 1/9 = 4/9
  b.add_term(1, 0, 1);  // v1^0 vanishes in M
  CHECK(b.terms() == std::map<MElement::Key, BigInt>{{{2, 2}, 4}});
  CHECK(b.to_string() == "4/(p^2 v1^2)");
}

TEST_CASE("pairing examples") {
  const Precision prec(3, 4, 4);
  const MonoClass beta0 = MonoClass::from_ijk(0, 1, 0);
  CHECK(pair(beta0, E0Element::constant(prec, 1)).terms() ==
        std::map<MElement::Key, BigInt>{{{1, 1}, 1}});
  CHECK(pair(beta0, E0Element::constant(prec, 3)).is_zero());
  // p u1 / (p^2 v1^2) = 1 / (p v1)
  const MonoClass mu = MonoClass::from_ijk(1, 2, 0);
  CHECK(pair(mu, E0Element::monomial(prec, 3, 1)).terms() ==
        std::map<MElement::Key, BigInt>{{{1, 1}, 1}});
  CHECK_THROWS_AS(pair(MonoClass::from_ijk(4, 1, 0), E0Element::constant(prec, 1)),
                  InsufficientPrecision);
  CHECK_THROWS_AS(pair(MonoClass::from_ijk(0, 5, 0), E0Element::constant(prec, 1)),
                  InsufficientPrecision);
}

TEST_CASE("pairing is additive") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(11);
  const Precision prec(5, 4, 6);
  for (int n = 0; n < 100; ++n) {
    const MonoClass mu = MonoClass::from_ijk(n % 3, 1 + n % 5, 0);
    const E0Element a = selfcheck::random_element(prec, rng);
    const E0Element b = selfcheck::random_element(prec, rng);
    CHECK(pair(mu, a + b) == pair(mu, a) + pair(mu, b));
  }
}

TEST_CASE("James-Hopf images") {
  const Precision prec(3, 4, 5);
  const auto w = sigmap::weierstrass_of_p_series(prec);
  const auto table = symm::power_sums_newton(symm::elementary_from_weierstrass(w), 8);
  const JHImage first = jh_image(table, 1);
  CHECK(first.value.u1_valuation() >= Valuation(1));
  CHECK(first.certified == Precision(3, 3, 5));
  CHECK(first.value * E0Element::constant(first.certified, 1) == first.value);
  const JHImage fourth = jh_image(table, 4);
  CHECK(fourth.value.coefficient(0) % 3 != 0);
  CHECK(symm::term_breakdown(3, 1, 0).contribution_p_valuation == 0);

  symm::PowerSumTable bad = table;
  bad.s[2] += E0Element::constant(prec, 1);
  CHECK_THROWS_AS(jh_image(bad, 2), NotDivisible);
}

TEST_CASE("detection grid") {
  // Value coefficients from an independent implementation of the pipeline.
  struct Row {
    int p, i, j;
    long coeff;
  };
  const Row rows[] = {
      {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 0, 3, 2},  {3, 1, 3, 1},  {3, 1, 6, 2},  {3, 2, 9, 2},
      {5, 0, 1, 4}, {5, 0, 2, 1}, {5, 0, 3, 4},  {5, 1, 5, 1},  {5, 1, 10, 4}, {5, 2, 25, 4},
      {7, 0, 1, 6}, {7, 0, 2, 1}, {7, 0, 3, 6},  {7, 1, 7, 1},  {7, 1, 14, 6}, {7, 2, 49, 6},
  };
  for (const Row& r : rows) {
    CAPTURE(r.p);
    CAPTURE(r.i);
    CAPTURE(r.j);
    const DetectionReport rep = hopf_invariant(r.p, r.i, r.j, r.j);
    CHECK(rep.filtration == r.p * r.j + r.i + 1);
    CHECK(rep.detector_v2 == 0);
    CHECK(rep.detector_v1 == r.i + 1);
    CHECK(rep.value.terms() == std::map<MElement::Key, BigInt>{{{1, r.i + 1}, r.coeff}});
    CHECK(rep.zero_above);
    CHECK(rep.scan_hi == rep.filtration + 2 * r.p);
    CHECK(rep.nonzero_k.back() == rep.filtration);
    CHECK(rep.degree_consistent());
    CHECK_FALSE(rep.exploratory);
  }
}

TEST_CASE("beta_1 at p = 5") {
  const DetectionReport rep = hopf_invariant(5, 0, 1, 1);
  CHECK(rep.filtration == 6);
  CHECK(rep.detector_v2 == 0);
  CHECK(rep.detector_v1 == 1);
  CHECK(rep.value.support() == Support{{1, 1}});
  CHECK(rep.precision == Precision(5, 4, 4));
}

TEST_CASE("detector follows the v2-power") {
  const DetectionReport rep = hopf_invariant(3, 1, 3, 7);
  CHECK(rep.filtration == 11);
  CHECK(rep.detector_v2 == 4);
  CHECK(rep.detector_v1 == 2);
}

TEST_CASE("degree consistency identity") {
  for (long p : {3, 5, 7})
    for (long i = 0; i <= 3; ++i)
      for (long j = 1; j <= 30; ++j)
        CHECK((p * p - 1) * j - (p - 1) * j + (p - 1) * (i + 1) == (p - 1) * (p * j + i + 1));
}

TEST_CASE("exploratory inputs and empty windows") {
  const DetectionReport rep = hopf_invariant(3, 2, 3, 3);
  CHECK(rep.exploratory);
  CHECK(rep.degree_consistent());
  const auto w = sigmap::weierstrass_of_p_series(Precision(3, 4, 4));
  const auto table = symm::power_sums_newton(symm::elementary_from_weierstrass(w), 3);
  CHECK_THROWS_AS(detect_from_images(3, MonoClass::from_ijk(0, 1, 1), jh_images(table, 3)),
                  EmptyWindow);
  CHECK_THROWS_AS(hopf_invariant(3, 0, 2, 1), std::invalid_argument);
}

TEST_CASE("unit invariance examples") {
  const DetectionReport rep = hopf_invariant(3, 0, 1, 1);
  const Precision& prec = rep.certified;
  CHECK(unit_invariance_check(rep, E0Element::constant(prec, 1)));
  CHECK(unit_invariance_check(rep, E0Element::constant(prec, 1) + E0Element::monomial(prec, 3, 1)));
  CHECK(unit_invariance_check(rep, E0Element::constant(prec, 2)));
  // 2 * 2 = 1 mod 3
  std::vector<JHImage> scaled;
  for (const JHImage& im : rep.images)
    scaled.push_back(JHImage{im.k, BigInt(2) * im.value, im.certified, im.weight});
  const DetectionReport again = detect_from_images(3, rep.input, scaled);
  CHECK(again.value.terms() == std::map<MElement::Key, BigInt>{{{1, 1}, 1}});
  CHECK_THROWS_AS(unit_invariance_check(rep, E0Element::monomial(prec, 1, 1)), NotAUnit);
}

TEST_CASE("units with u1-terms move lower-order terms but not the leading term") {
  const DetectionReport rep = hopf_invariant(3, 1, 3, 3);
  const Precision& prec = rep.certified;
  const E0Element u = E0Element::constant(prec, 1) + E0Element::monomial(prec, 1, 1);
  const UnitInvariance r = unit_invariance(rep, u);
  CHECK(r.ok());
  CHECK_FALSE(r.full_support);
  CHECK(unit_invariance(rep, E0Element::constant(prec, 5)).full_support);
}

TEST_CASE("random unit invariance") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(5);
  for (int p : {3, 5}) {
    for (auto [i, j] : {std::pair{0, 2}, std::pair{1, p}}) {
      const DetectionReport rep = hopf_invariant(p, i, j, j);
      for (int n = 0; n < 20; ++n) {
        CHECK(unit_invariance_check(rep, selfcheck::random_unit(rep.certified, rng)));
        const BigInt c = selfcheck::random_unit(rep.certified, rng).coefficient(0);
        CHECK(unit_invariance(rep, E0Element::constant(rep.certified, c)).full_support);
      }
    }
  }
}

TEST_CASE("trace form") {
  for (int p : {3, 5, 7}) {
    const auto w = sigmap::weierstrass_of_p_series(Precision(p, 4, 4));
    const auto table = symm::power_sums_newton(symm::elementary_from_weierstrass(w), 2 * p + 2);
    const Gram g = trace_form_gram(w, table);
    REQUIRE(g.size() == static_cast<std::size_t>(p + 1));
    const GramPattern pat = gram_pattern(g, p);
    CHECK(pat.ok());
    CHECK(pat.failures.empty());
    CHECK(g[0][0] == jh_image(table, 1).value);
    for (int a = 0; a <= p; ++a)
      for (int b = 1; b <= p + 1; ++b) {
        if (a + b == p + 1) CHECK(g[a][b - 1].is_unit());
        if (a + b < p + 1) CHECK_FALSE(g[a][b - 1].is_unit());
      }
    const auto short_table = symm::power_sums_newton(symm::elementary_from_weierstrass(w), p);
    CHECK_THROWS_AS(trace_form_gram(w, short_table), std::out_of_range);
  }
}
