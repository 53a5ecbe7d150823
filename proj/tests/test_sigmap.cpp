#include <doctest.h>

#include "jh/sigmap.hpp"

using namespace jh;
using namespace jh::sigmap;

TEST_CASE("q0 at p = 3, precision (3^4, u1^5)") {
  // Reference values from an independent implementation of the pipeline.
  const Precision prec(3, 4, 5);
  const WeierstrassPoly w = weierstrass_of_p_series(prec);
  CHECK(w.degree() == 4);
  CHECK(w.coefficient(1) == E0Element::monomial(prec, 51, 3));
  CHECK(w.coefficient(2) == E0Element::monomial(prec, 72, 2));
  CHECK(w.coefficient(3) == E0Element::monomial(prec, 1, 1));
  CHECK(w.coefficient(4) == E0Element::constant(prec, 3));
}

TEST_CASE("q0 at p = 5, 7, precision (p^4, u1^5)") {
  const Precision p5(5, 4, 5);
  const WeierstrassPoly w5 = weierstrass_of_p_series(p5);
  CHECK(w5.coefficient(1).is_zero());
  CHECK(w5.coefficient(2) == E0Element::monomial(p5, 575, 4));
  CHECK(w5.coefficient(3) == E0Element::monomial(p5, 375, 3));
  CHECK(w5.coefficient(4).is_zero());
  CHECK(w5.coefficient(5) == E0Element::monomial(p5, 1, 1));
  CHECK(w5.coefficient(6) == E0Element::constant(p5, 5));
  const Precision p7(7, 4, 5);
  const WeierstrassPoly w7 = weierstrass_of_p_series(p7);
  for (int i = 1; i <= 6; ++i) CHECK(w7.coefficient(i).is_zero());
  CHECK(w7.coefficient(7) == E0Element::monomial(p7, 1, 1));
  CHECK(w7.coefficient(8) == E0Element::constant(p7, 7));
}

TEST_CASE("valuation pattern") {
  for (int p : {3, 5, 7}) {
    const WeierstrassPoly w = weierstrass_of_p_series(Precision(p, 5, 6));
    const ValuationReport r = valuation_report(w);
    REQUIRE(r.rows.size() == static_cast<std::size_t>(p + 1));
    CHECK(r.rows[p].p_val == Valuation(1));
    CHECK(r.rows[p].unit_after_division);
    CHECK(r.rows[p - 1].u1_val == Valuation(1));
    CHECK(r.rows[p - 1].p_val == Valuation(0));
    for (int i = 0; i + 1 < p; ++i) {
      CHECK(r.rows[i].p_val >= Valuation(1));
      CHECK(r.rows[i].u1_val >= Valuation(1));
    }
  }
}

TEST_CASE("a corrupted q0 raises PatternViolation with the index") {
  const Precision prec(3, 4, 4);
  WeierstrassPoly w = weierstrass_of_p_series(prec);
  w.c[3] += E0Element::constant(prec, 1);
  try {
    valuation_report(w);
    FAIL("expected PatternViolation");
  } catch (const PatternViolation& e) {
    CHECK(e.index() == 4);
  }
  WeierstrassPoly v = weierstrass_of_p_series(prec);
  v.c[0] += E0Element::constant(prec, 3);
  CHECK_THROWS_AS(valuation_report(v), PatternViolation);
}

TEST_CASE("q0 * U = q") {
  for (int p : {3, 5, 7}) {
    const Precision prec(p, 4, 4);
    const WeierstrassPoly w = weierstrass_of_p_series(prec);
    const QSeries q = extract_q(fgl::p_series_specialized(prec, w.x_trunc));
    const auto f = w.ascending();
    const auto& u = w.unit_cofactor.q;
    CHECK(u.front().is_unit());
    for (int m = 0; m < q.y_trunc(); ++m) {
      E0Element s(prec);
      for (int a = 0; a <= p + 1 && a <= m; ++a)
        if (m - a < static_cast<int>(u.size())) s += f[a] * u[m - a];
      CHECK(s == q.q[m]);
    }
  }
}

TEST_CASE("Weierstrass factor of h is y^{p+1} + u1 y + p") {
  for (int p : {3, 5, 7}) {
    const Precision prec(p, 5, 5);
    const WeierstrassPoly w = weierstrass_of_h_series(prec);
    for (int i = 1; i <= p + 1; ++i) {
      E0Element expected(prec);
      if (i == p) expected = E0Element::monomial(prec, 1, 1);
      if (i == p + 1) expected = E0Element::constant(prec, p);
      CHECK(w.coefficient(i) == expected);
    }
  }
}

TEST_CASE("preparation of a polynomial input") {
  const Precision prec(3, 4, 4);
  // q = (y^4 + u1 y + 3)(1 + y)
  std::vector<E0Element> q(6, E0Element(prec));
  q[0] = E0Element::constant(prec, 3);
  q[1] = E0Element::constant(prec, 3) + E0Element::monomial(prec, 1, 1);
  q[2] = E0Element::monomial(prec, 1, 1);
  q[4] = E0Element::constant(prec, 1);
  q[5] = E0Element::constant(prec, 1);
  const WeierstrassPoly w = weierstrass_prep(QSeries{q, true});
  CHECK(w.coefficient(4) == E0Element::constant(prec, 3));
  CHECK(w.coefficient(3) == E0Element::monomial(prec, 1, 1));
  CHECK(w.coefficient(2).is_zero());
  CHECK(w.coefficient(1).is_zero());
  CHECK(w.unit_cofactor.q[0] == E0Element::constant(prec, 1));
  CHECK(w.unit_cofactor.q[1] == E0Element::constant(prec, 1));
}

TEST_CASE("errors") {
  const Precision prec(3, 4, 4);
  QSeries unit{{E0Element::constant(prec, 1), E0Element(prec)}, true};
  CHECK_THROWS_AS(weierstrass_prep(unit), WrongWeierstrassDegree);
  // degree 1 instead of p + 1
  QSeries low{{E0Element::constant(prec, 3), E0Element::constant(prec, 1)}, true};
  CHECK_THROWS_AS(weierstrass_prep(low), WrongWeierstrassDegree);
  // a short truncation of the real series cannot be certified
  const QSeries q = extract_q(fgl::p_series_specialized(prec, 11));
  CHECK_THROWS_AS(weierstrass_prep(q), NeedsMorePrecision);
  // support violation
  fgl::SpecializedSeries s = fgl::p_series_specialized(prec, 11);
  s.coefficients[2] = E0Element::constant(prec, 1);
  CHECK_THROWS_AS(extract_q(s), SupportViolation);
}

TEST_CASE("required truncation") {
  CHECK(required_y_trunc(Precision(3, 4, 5)) == 32);
  CHECK(required_x_trunc(Precision(3, 4, 5)) == 63);
  CHECK(required_y_trunc(Precision(3, 1, 1)) == 5);
}
