#include "jh/sigmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace jh::sigmap {

QSeries extract_q(const fgl::SpecializedSeries& series) {
  const Precision& prec = series.precision;
  const int p = prec.prime();
  const int n = series.x_trunc();
  if (n < 1) throw std::invalid_argument("extract_q needs x-truncation >= 1");
  QSeries out;
  for (int m = 0; m <= n; ++m) {
    const E0Element& c = series.coefficients[static_cast<std::size_t>(m)];
    if (m >= 1 && (m - 1) % (p - 1) == 0) {
      out.q.push_back(c);
    } else if (!c.is_zero()) {
      throw SupportViolation("coefficient of x^" + std::to_string(m) + " is nonzero but " +
                             std::to_string(m) + " != 1 mod " + std::to_string(p - 1));
    }
  }
  return out;
}

std::vector<E0Element> WeierstrassPoly::ascending() const {
  std::vector<E0Element> out(c.rbegin(), c.rend());
  out.push_back(E0Element::constant(certified, 1));
  return out;
}

int required_y_trunc(const Precision& prec) {
  const int d = prec.prime() + 1;
  return std::max(d + 1, d * (prec.p_prec() + prec.u_prec() - 1));
}

int required_x_trunc(const Precision& prec) {
  return (prec.prime() - 1) * (required_y_trunc(prec) - 1) + 1;
}

int weierstrass_degree(const QSeries& q) {
  for (int i = 0; i < q.y_trunc(); ++i)
    if (q.q[static_cast<std::size_t>(i)].is_unit()) return i;
  return -1;
}

namespace {

using Poly = std::vector<E0Element>;

// Division of a truncated series by the monic f = y^d + sum_{k<d} tail[k] y^k.
struct DivMod {
  Poly quotient;
  Poly remainder;
};

DivMod divmod_monic(Poly s, const Poly& tail) {
  const int d = static_cast<int>(tail.size());
  const Precision prec = tail.front().precision();
  const int len = static_cast<int>(s.size());
  DivMod out;
  out.quotient.assign(static_cast<std::size_t>(std::max(len - d, 0)), E0Element(prec));
  for (int m = len - 1; m >= d; --m) {
    const E0Element c = s[static_cast<std::size_t>(m)];
    if (c.is_zero()) continue;
    out.quotient[static_cast<std::size_t>(m - d)] = c;
    for (int k = 0; k < d; ++k)
      if (!tail[static_cast<std::size_t>(k)].is_zero())
        s[static_cast<std::size_t>(m - d + k)] -= c * tail[static_cast<std::size_t>(k)];
  }
  s.resize(static_cast<std::size_t>(std::min(len, d)), E0Element(prec));
  s.resize(static_cast<std::size_t>(d), E0Element(prec));
  out.remainder = std::move(s);
  return out;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& tail) {
  const int d = static_cast<int>(tail.size());
  const Precision prec = tail.front().precision();
  std::vector<E0Accumulator> acc(static_cast<std::size_t>(2 * d - 1), E0Accumulator(prec));
  for (int i = 0; i < d; ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < d; ++j)
      if (!b[static_cast<std::size_t>(j)].is_zero())
        acc[static_cast<std::size_t>(i + j)].add_product(a[static_cast<std::size_t>(i)],
                                                         b[static_cast<std::size_t>(j)]);
  }
  Poly prod;
  for (auto& x : acc) prod.push_back(x.finish());
  return divmod_monic(std::move(prod), tail).remainder;
}

bool all_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](const E0Element& x) { return x.is_zero(); });
}

constexpr int kMaxNewtonSteps = 64;

// Inverse of a unit z of A[y]/f by Newton's iteration w <- w(2 - z w).
Poly inverse_mod(const Poly& z, const Poly& tail) {
  const Precision prec = tail.front().precision();
  const int d = static_cast<int>(tail.size());
  Poly w(static_cast<std::size_t>(d), E0Element(prec));
  w[0] = z[0].inverse();
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    Poly zw = mulmod(z, w, tail);
    Poly two_minus(static_cast<std::size_t>(d), E0Element(prec));
    for (int k = 0; k < d; ++k) two_minus[static_cast<std::size_t>(k)] = -zw[static_cast<std::size_t>(k)];
    two_minus[0] += E0Element::constant(prec, 2);
    Poly next = mulmod(w, two_minus, tail);
    if (next == w) return w;
    w = std::move(next);
  }
  throw NeedsMorePrecision("inverse in A[y]/q0 did not settle");
}

}  // namespace

WeierstrassPoly weierstrass_prep(const QSeries& q) {
  if (q.q.empty()) throw std::invalid_argument("empty q-series");
  const Precision prec = q.precision();
  const int p = prec.prime();
  const int d = p + 1;
  const int len = q.y_trunc();

  const int deg = weierstrass_degree(q);
  if (deg < 0) {
    if (len > d || q.polynomial)
      throw WrongWeierstrassDegree("q has no unit coefficient through y^" + std::to_string(len - 1));
    throw NeedsMorePrecision("q truncated at y^" + std::to_string(len) +
                             " before its Weierstrass degree");
  }
  if (deg != d)
    throw WrongWeierstrassDegree("Weierstrass degree is " + std::to_string(deg) + ", expected " +
                                 std::to_string(d));
  if (!q.polynomial && len < required_y_trunc(prec))
    throw NeedsMorePrecision("y-truncation " + std::to_string(len) + " below the " +
                             std::to_string(required_y_trunc(prec)) + " needed for " +
                             prec.to_string());

  Poly tail(static_cast<std::size_t>(d), E0Element(prec));
  for (int it = 0; it < kMaxNewtonSteps; ++it) {
    DivMod dm = divmod_monic(q.q, tail);
    if (all_zero(dm.remainder)) {
      WeierstrassPoly w{{}, QSeries{std::move(dm.quotient), q.polynomial}, prec, it, 0};
      for (int i = 1; i <= d; ++i) w.c.push_back(tail[static_cast<std::size_t>(d - i)]);
      return w;
    }
    Poly qmod = divmod_monic(dm.quotient, tail).remainder;
    const Poly delta = mulmod(dm.remainder, inverse_mod(qmod, tail), tail);
    for (int k = 0; k < d; ++k) tail[static_cast<std::size_t>(k)] += delta[static_cast<std::size_t>(k)];
  }
  throw NeedsMorePrecision("Weierstrass iteration did not settle at " + prec.to_string());
}

ValuationReport valuation_report(const WeierstrassPoly& w) {
  const int p = w.certified.prime();
  const int d = p + 1;
  if (w.degree() != d)
    throw PatternViolation("Weierstrass polynomial has degree " + std::to_string(w.degree()), 0);
  ValuationReport report{p, {}};
  for (int i = 1; i <= d; ++i) {
    const E0Element& c = w.coefficient(i);
    CoefficientValuation row{i, c.p_valuation(), c.u1_valuation(), false};
    const std::string name = "c_" + std::to_string(i);
    if (i == d) {
      try {
        row.unit_after_division = c.divide_exact(Divisor::p, 1).is_unit();
      } catch (const NotDivisible&) {
      }
      if (!row.unit_after_division)
        throw PatternViolation(name + " = " + c.to_string() + " is not p times a unit", i);
    } else if (i == p) {
      try {
        row.unit_after_division = c.divide_exact(Divisor::u1, 1).is_unit();
      } catch (const NotDivisible&) {
      }
      if (!row.unit_after_division)
        throw PatternViolation(name + " = " + c.to_string() + " is not u1 times a unit", i);
    } else if (row.p_val < Valuation(1) || row.u1_val < Valuation(1)) {
      throw PatternViolation(name + " = " + c.to_string() + " is not divisible by p*u1", i);
    }
    report.rows.push_back(row);
  }
  return report;
}

namespace {

constexpr int kMaxDoublings = 4;

template <class Build>
WeierstrassPoly prepare_with_retries(const Precision& prec, int x_trunc, Build build) {
  int n = x_trunc > 0 ? x_trunc : required_x_trunc(prec);
  for (int attempt = 0;; ++attempt) {
    try {
      WeierstrassPoly w = weierstrass_prep(extract_q(build(prec, n)));
      w.x_trunc = n;
      return w;
    } catch (const NeedsMorePrecision&) {
      if (attempt >= kMaxDoublings) throw;
      n = 2 * n;
    }
  }
}

}  // namespace

WeierstrassPoly weierstrass_of_p_series(const Precision& prec, int x_trunc) {
  return prepare_with_retries(prec, x_trunc, [](const Precision& pr, int n) {
    return fgl::p_series_specialized(pr, n);
  });
}

WeierstrassPoly weierstrass_of_h_series(const Precision& prec, int x_trunc) {
  return prepare_with_retries(prec, x_trunc, [](const Precision& pr, int n) {
    return fgl::h_series_specialized(pr, n);
  });
}

}  // namespace jh::sigmap
