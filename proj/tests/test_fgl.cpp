#include <doctest.h>

#include "jh/fgl.hpp"

using namespace jh;
using namespace jh::fgl;

namespace {

Rational q(const char* s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

}  // namespace

// Reference values computed independently by series reversion in a computer
// algebra system at p = 3.
TEST_CASE("Araki logarithm at p = 3") {
  const ArakiLog log = araki_log(3, 2);
  CHECK(log.l[1] == WeightedPoly::term(3, q("-1/24"), {1, 0}));
  const WeightedPoly l2 =
      WeightedPoly::term(3, q("-1/19680"), {0, 1}) + WeightedPoly::term(3, q("1/472320"), {4, 0});
  CHECK(log.l[2] == l2);
}

TEST_CASE("[3](x) through x^11") {
  const FormalGroup fg(3, 11);
  const GradedSeries ps = fg.p_series();
  CHECK(ps.coefficient(1) == WeightedPoly::constant(3, 3));
  CHECK(ps.coefficient(3) == WeightedPoly::term(3, 1, {1, 0}));
  CHECK(ps.coefficient(5) == WeightedPoly::term(3, q("9/8"), {2, 0}));
  CHECK(ps.coefficient(7) == WeightedPoly::term(3, q("105/64"), {3, 0}));
  CHECK(ps.coefficient(9) ==
        WeightedPoly::term(3, 1, {0, 1}) + WeightedPoly::term(3, q("1377/512"), {4, 0}));
  CHECK(ps.coefficient(11) == WeightedPoly::term(3, q("3985389/839680"), {5, 0}) +
                                  WeightedPoly::term(3, q("3464064/839680"), {1, 1}));
  for (int m : {0, 2, 4, 6, 8, 10}) CHECK(ps.coefficient(m).is_zero());
}

TEST_CASE("two constructions of [p](x) agree and are integral") {
  for (int p : {3, 5}) {
    const int n = p * p + 2 * (p - 1);
    const FormalGroup fg(p, n);
    const GradedSeries ps = fg.p_series();
    CHECK(ps == fg.p_series_from_log());
    CHECK(ps.is_p_integral());
    CHECK(fg.h_series().is_p_integral());
    CHECK(fg.negation() == -GradedSeries::variable(p, n));
  }
}

TEST_CASE("formal sum is integral, commutative and has unit 0") {
  const FormalGroup fg(3, 15);
  const GradedSeries x = GradedSeries::variable(3, 15);
  const GradedSeries y = fg.p_series();
  CHECK(fg.sum(x, y) == fg.sum(y, x));
  CHECK(fg.sum(x, GradedSeries(3, 15)) == x);
  CHECK(fg.sum(x, y).is_p_integral());
}

TEST_CASE("[p](x) mod (p, v1) starts with v2 x^{p^2}") {
  const int p = 3;
  const FormalGroup fg(p, 12);
  const GradedSeries ps = fg.p_series();
  for (int m = 0; m < p * p; ++m)
    for (const auto& [mon, c] : ps.coefficient(m).terms())
      CHECK((mon.v1 > 0 || c.get_num() % p == 0));
  CHECK(ps.coefficient(p * p).coefficient({0, 1}) == 1);
}

TEST_CASE("h(x) has leading part px + v1 x^p + v2 x^{p^2} and agrees with [p](x) mod (p v1)") {
  for (int p : {3, 5}) {
    const int n = p * p + 2 * (p - 1);
    const FormalGroup fg(p, n);
    const GradedSeries h = fg.h_series();
    CHECK(h.coefficient(1) == WeightedPoly::constant(p, p));
    CHECK(h.coefficient(p) == WeightedPoly::term(p, 1, {1, 0}));
    CHECK(h.coefficient(p * p).coefficient({0, 1}) == 1);
    const GradedSeries d = fg.p_series() - h;
    for (int m = 0; m <= n; ++m)
      for (const auto& [mon, c] : d.coefficient(m).terms()) {
        CHECK(mon.v1 >= 1);
        CHECK(c.get_num() % p == 0);
      }
  }
}

TEST_CASE("homogeneity is enforced") {
  WeightedPoly w(3, 2);
  w.add_term({1, 0}, 1);  // v1 has weight 2 at p = 3
  CHECK_THROWS_AS(w.add_term({0, 1}, 1), HomogeneityViolation);
  CHECK(v2_exponent(3, 8, 0) == 1);
  CHECK(v2_exponent(3, -8, 4) == -2);
  CHECK_FALSE(v2_exponent(3, 2, 0).has_value());
}

TEST_CASE("specialization") {
  const Precision prec(3, 4, 5);
  const FormalGroup fg(3, 30);
  const SpecializedSeries s = specialize_v2(fg.p_series(), prec);
  CHECK(s.coefficients[1] == E0Element::constant(prec, 3));
  CHECK(s.coefficients[3] == E0Element::monomial(prec, 1, 1));
  // v2 x^9 becomes 1 at x^9 plus 1377/512 u1^4
  CHECK(s.coefficients[9].coefficient(0) == 1);
}

TEST_CASE("specialized tier matches the exact tier") {
  for (int p : {3, 5}) {
    const int n = p == 3 ? 40 : 45;
    const Precision prec(p, 4, 5);
    const FormalGroup fg(p, n);
    const SpecializedSeries exact = specialize_v2(fg.p_series(), prec);
    const SpecializedSeries a = p_series_specialized(prec, n);
    const SpecializedSeries b = p_series_specialized(prec, n, PSeriesRoute::iterated_sum);
    const SpecializedSeries hx = specialize_v2(fg.h_series(), prec);
    const SpecializedSeries hf = h_series_specialized(prec, n);
    for (int m = 0; m <= n; ++m) {
      CHECK(exact.coefficients[m] == a.coefficients[m]);
      CHECK(a.coefficients[m] == b.coefficients[m]);
      CHECK(hx.coefficients[m] == hf.coefficients[m]);
    }
  }
}

TEST_CASE("support congruence of the specialized p-series") {
  for (int p : {3, 5, 7}) {
    const SpecializedSeries s = p_series_specialized(Precision(p, 3, 4), 200);
    for (int m = 0; m <= 200; ++m)
      if ((m - 1) % (p - 1) != 0 || m == 0) CHECK(s.coefficients[m].is_zero());
  }
}
