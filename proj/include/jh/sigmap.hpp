#pragma once

// E^*BΣ_p = E^*[x]/x q(x): extraction of q(y) from [p](x) and its Weierstrass
// factor q0(y) = y^{p+1} + c_1 y^p + ... + c_{p+1} over Z_p[[u1]].

#include <string>
#include <vector>

#include "jh/arith.hpp"
#include "jh/fgl.hpp"

namespace jh::sigmap {

// q(y) = q_0 + q_1 y + ... known for y-exponents below y_trunc. The coefficient
// of y^i has weight i(p-1). `polynomial` marks an input known to vanish past
// the stored range (no truncation error).
struct QSeries {
  std::vector<E0Element> q;
  bool polynomial = false;

  int y_trunc() const { return static_cast<int>(q.size()); }
  const Precision& precision() const { return q.front().precision(); }
  int prime() const { return precision().prime(); }
};

// q_i = coefficient of x^{i(p-1)+1}. SupportViolation if any coefficient at
// m != 1 mod (p-1) is nonzero.
QSeries extract_q(const fgl::SpecializedSeries& series);

struct WeierstrassPoly {
  // c[i-1] = c_i for i = 1..p+1.
  std::vector<E0Element> c;
  QSeries unit_cofactor;
  Precision certified;
  int iterations = 0;
  int x_trunc = 0;  // x-truncation of the series it came from, if any

  int degree() const { return static_cast<int>(c.size()); }
  const E0Element& coefficient(int i) const { return c.at(static_cast<std::size_t>(i - 1)); }
  // Coefficients of the monic polynomial from y^0 up to y^{p+1}.
  std::vector<E0Element> ascending() const;
};

// Smallest y-truncation at which q mod y^M determines q0 modulo (p^Tp, u1^Tu):
// y^{p+1} lies in the maximal ideal times A[y]/q0, and m^{Tp+Tu-1} is inside
// (p^Tp, u1^Tu).
int required_y_trunc(const Precision& prec);
int required_x_trunc(const Precision& prec);

// Weierstrass degree of q: lowest y-exponent whose coefficient is a unit.
int weierstrass_degree(const QSeries& q);

// q = q0 * U with q0 monic of degree p+1 and U a unit series, by Newton
// iteration on q0. WrongWeierstrassDegree unless q has Weierstrass degree p+1;
// NeedsMorePrecision when the truncation is too short to certify the result
// or the iteration fails to settle.
WeierstrassPoly weierstrass_prep(const QSeries& q);

struct CoefficientValuation {
  int index = 0;  // i in c_i
  Valuation p_val = Valuation::infinity();
  Valuation u1_val = Valuation::infinity();
  // Whether c_i divided by its expected generator (p for c_{p+1}, u1 for c_p)
  // is a unit; false for the remaining indices.
  bool unit_after_division = false;
};

struct ValuationReport {
  int prime = 0;
  std::vector<CoefficientValuation> rows;
};

// Checks c_{p+1} = p*unit, c_p = u1*unit and c_i in (p*u1) for i < p.
// PatternViolation carries the offending index.
ValuationReport valuation_report(const WeierstrassPoly& w);

// Full pipeline from the formal group law. x_trunc = 0 selects
// required_x_trunc(prec); a NeedsMorePrecision from the preparation doubles
// the truncation (bounded number of retries).
WeierstrassPoly weierstrass_of_p_series(const Precision& prec, int x_trunc = 0);
WeierstrassPoly weierstrass_of_h_series(const Precision& prec, int x_trunc = 0);

}  // namespace jh::sigmap
