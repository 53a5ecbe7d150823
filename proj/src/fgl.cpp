#include "jh/fgl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jh::fgl {

int monomial_weight(int prime, Monomial m) {
  return m.v1 * (prime - 1) + m.v2 * (prime * prime - 1);
}

std::optional<int> v2_exponent(int prime, int weight, int u1_exp) {
  const int rest = weight - u1_exp * (prime - 1);
  const int w2 = prime * prime - 1;
  if (rest % w2 != 0) return std::nullopt;
  return rest / w2;
}

// ---------------------------------------------------------------------------
// WeightedPoly

WeightedPoly::WeightedPoly(int prime, int weight) : prime_(prime), weight_(weight) {}

WeightedPoly WeightedPoly::constant(int prime, const Rational& c) {
  return term(prime, c, Monomial{});
}

WeightedPoly WeightedPoly::term(int prime, const Rational& c, Monomial m) {
  WeightedPoly r(prime, monomial_weight(prime, m));
  r.add_term(m, c);
  return r;
}

Rational WeightedPoly::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void WeightedPoly::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  if (monomial_weight(prime_, m) != weight_)
    throw HomogeneityViolation("monomial v1^" + std::to_string(m.v1) + " v2^" +
                               std::to_string(m.v2) + " does not have weight " +
                               std::to_string(weight_));
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeightedPoly WeightedPoly::operator-() const {
  WeightedPoly r(prime_, weight_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

WeightedPoly operator+(const WeightedPoly& a, const WeightedPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.weight_ != b.weight_)
    throw HomogeneityViolation("adding polynomials of weights " + std::to_string(a.weight_) +
                               " and " + std::to_string(b.weight_));
  WeightedPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

WeightedPoly operator-(const WeightedPoly& a, const WeightedPoly& b) { return a + (-b); }

WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b) {
  WeightedPoly r(a.prime_, a.weight_ + b.weight_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term(Monomial{ma.v1 + mb.v1, ma.v2 + mb.v2}, ca * cb);
  return r;
}

WeightedPoly operator*(const Rational& c, const WeightedPoly& a) {
  WeightedPoly r(a.prime_, a.weight_);
  if (c == 0) return r;
  for (const auto& [m, x] : a.terms_) r.terms_.emplace(m, c * x);
  return r;
}

int WeightedPoly::p_denominator_exponent() const {
  int worst = 0;
  for (const auto& [m, c] : terms_) {
    const Valuation v = p_valuation(BigInt(c.get_den()), prime_);
    worst = std::max(worst, v.value());
  }
  return worst;
}

std::string WeightedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool bare = m.v1 == 0 && m.v2 == 0;
    if (bare || c != 1) os << c.get_str() << (bare ? "" : "*");
    if (m.v1 > 0) os << "v1" << (m.v1 > 1 ? "^" + std::to_string(m.v1) : "");
    if (m.v1 > 0 && m.v2 > 0) os << "*";
    if (m.v2 > 0) os << "v2" << (m.v2 > 1 ? "^" + std::to_string(m.v2) : "");
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GradedSeries

GradedSeries::GradedSeries(int prime, int x_trunc, int weight_offset)
    : prime_(prime), x_trunc_(x_trunc), weight_offset_(weight_offset) {
  if (x_trunc < 0) throw std::invalid_argument("negative x-truncation");
  coeffs_.reserve(static_cast<std::size_t>(x_trunc) + 1);
  for (int m = 0; m <= x_trunc; ++m) coeffs_.emplace_back(prime, m + weight_offset);
}

GradedSeries GradedSeries::monomial(const WeightedPoly& c, int m, int x_trunc) {
  GradedSeries s(c.prime(), x_trunc, c.weight() - m);
  if (m <= x_trunc) s.set_coefficient(m, c);
  return s;
}

GradedSeries GradedSeries::variable(int prime, int x_trunc) {
  return monomial(WeightedPoly::constant(prime, 1), 1, x_trunc);
}

const WeightedPoly& GradedSeries::coefficient(int m) const {
  if (m < 0 || m > x_trunc_) throw std::out_of_range("x-exponent beyond truncation");
  return coeffs_[static_cast<std::size_t>(m)];
}

void GradedSeries::set_coefficient(int m, WeightedPoly c) {
  if (m < 0 || m > x_trunc_) throw std::out_of_range("x-exponent beyond truncation");
  if (c.is_zero()) {
    coeffs_[static_cast<std::size_t>(m)] = WeightedPoly(prime_, m + weight_offset_);
    return;
  }
  if (c.weight() != m + weight_offset_)
    throw HomogeneityViolation("coefficient of x^" + std::to_string(m) + " has weight " +
                               std::to_string(c.weight()) + ", expected " +
                               std::to_string(m + weight_offset_));
  coeffs_[static_cast<std::size_t>(m)] = std::move(c);
}

std::optional<int> GradedSeries::order() const {
  for (int m = 0; m <= x_trunc_; ++m)
    if (!coeffs_[static_cast<std::size_t>(m)].is_zero()) return m;
  return std::nullopt;
}

GradedSeries GradedSeries::operator-() const {
  GradedSeries r(prime_, x_trunc_, weight_offset_);
  for (int m = 0; m <= x_trunc_; ++m) r.coeffs_[static_cast<std::size_t>(m)] = -coeffs_[static_cast<std::size_t>(m)];
  return r;
}

namespace {

int joint_offset(const GradedSeries& a, const GradedSeries& b) {
  if (a.is_zero()) return b.weight_offset();
  if (b.is_zero()) return a.weight_offset();
  if (a.weight_offset() != b.weight_offset())
    throw HomogeneityViolation("adding series with weight offsets " +
                               std::to_string(a.weight_offset()) + " and " +
                               std::to_string(b.weight_offset()));
  return a.weight_offset();
}

}  // namespace

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
  const int n = std::min(a.x_trunc_, b.x_trunc_);
  GradedSeries r(a.prime_, n, joint_offset(a, b));
  for (int m = 0; m <= n; ++m) r.set_coefficient(m, a.coefficient(m) + b.coefficient(m));
  return r;
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) { return a + (-b); }

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  const int n = std::min(a.x_trunc_, b.x_trunc_);
  GradedSeries r(a.prime_, n, a.weight_offset_ + b.weight_offset_);
  std::vector<int> nz_a, nz_b;
  for (int m = 0; m <= n; ++m) {
    if (!a.coefficient(m).is_zero()) nz_a.push_back(m);
    if (!b.coefficient(m).is_zero()) nz_b.push_back(m);
  }
  for (int i : nz_a)
    for (int j : nz_b) {
      if (i + j > n) break;
      auto& slot = r.coeffs_[static_cast<std::size_t>(i + j)];
      slot = slot + a.coefficient(i) * b.coefficient(j);
    }
  return r;
}

GradedSeries operator*(const WeightedPoly& c, const GradedSeries& a) {
  GradedSeries r(a.prime_, a.x_trunc_, a.weight_offset_ + c.weight());
  for (int m = 0; m <= a.x_trunc_; ++m)
    if (!a.coefficient(m).is_zero()) r.set_coefficient(m, c * a.coefficient(m));
  return r;
}

GradedSeries GradedSeries::pow(unsigned long n) const {
  GradedSeries result = monomial(WeightedPoly::constant(prime_, 1), 0, x_trunc_);
  GradedSeries base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

GradedSeries GradedSeries::truncated(int x_trunc) const {
  const int n = std::min(x_trunc, x_trunc_);
  GradedSeries r(prime_, n, weight_offset_);
  for (int m = 0; m <= n; ++m) r.coeffs_[static_cast<std::size_t>(m)] = coeffs_[static_cast<std::size_t>(m)];
  return r;
}

bool GradedSeries::operator==(const GradedSeries& o) const {
  if (prime_ != o.prime_ || x_trunc_ != o.x_trunc_) return false;
  for (int m = 0; m <= x_trunc_; ++m)
    if (!(coefficient(m) == o.coefficient(m))) return false;
  return true;
}

bool GradedSeries::is_p_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const WeightedPoly& c) { return c.is_p_integral(); });
}

// ---------------------------------------------------------------------------
// Exact tier

ArakiLog araki_log(int prime, int depth) {
  if (depth < 1) throw std::invalid_argument("logarithm depth must be >= 1");
  if (prime == 2 || !is_prime(prime))
    throw std::invalid_argument("araki_log needs an odd prime");
  ArakiLog log{prime, {}};
  log.l.push_back(WeightedPoly::constant(prime, 1));
  for (int n = 1; n <= depth; ++n) {
    const unsigned long pn1 = ipow(prime, static_cast<unsigned long>(n - 1)).get_ui();
    WeightedPoly rhs = log.l[static_cast<std::size_t>(n - 1)] *
                       WeightedPoly::term(prime, 1, Monomial{static_cast<int>(pn1), 0});
    if (n >= 2) {
      const unsigned long pn2 = ipow(prime, static_cast<unsigned long>(n - 2)).get_ui();
      rhs = rhs + log.l[static_cast<std::size_t>(n - 2)] *
                      WeightedPoly::term(prime, 1, Monomial{0, static_cast<int>(pn2)});
    }
    const BigInt pp = ipow(prime, ipow(prime, static_cast<unsigned long>(n)).get_ui());
    const Rational denom(BigInt(prime) - pp);
    log.l.push_back(Rational(1) / denom * rhs);
  }
  return log;
}

int log_depth_for(int prime, int x_trunc) {
  int depth = 1;
  long long pd = static_cast<long long>(prime) * prime;
  while (pd <= x_trunc) {
    ++depth;
    pd *= prime;
  }
  return depth;
}

namespace {

void require_depth(const ArakiLog& log, int needed) {
  if (log.depth() < needed)
    throw std::invalid_argument("logarithm depth " + std::to_string(log.depth()) +
                                " too small; need " + std::to_string(needed));
}

void require_integral(const GradedSeries& s, const char* what) {
  for (int m = 0; m <= s.x_trunc(); ++m)
    if (!s.coefficient(m).is_p_integral())
      throw IntegralityViolation(std::string(what) + ": coefficient of x^" + std::to_string(m) +
                                 " keeps a p-power denominator: " + s.coefficient(m).to_string());
}

}  // namespace

GradedSeries log_series(const ArakiLog& log, int x_trunc) {
  require_depth(log, log_depth_for(log.prime, x_trunc));
  GradedSeries s(log.prime, x_trunc, -1);
  long long pi = 1;
  for (int i = 0; i <= log.depth() && pi <= x_trunc; ++i, pi *= log.prime)
    s.set_coefficient(static_cast<int>(pi), log.l[static_cast<std::size_t>(i)]);
  return s;
}

GradedSeries apply_log(const ArakiLog& log, const GradedSeries& a) {
  const auto ord = a.order();
  const int n = a.x_trunc();
  if (!ord) return GradedSeries(a.prime(), n, -1);
  if (*ord < 1) throw std::invalid_argument("log needs a series without constant term");
  if (a.weight_offset() != -1)
    throw HomogeneityViolation("log needs a series of weight offset -1");
  GradedSeries result = a;
  GradedSeries power = a;
  long long pi = 1;
  for (int i = 1;; ++i) {
    pi *= log.prime;
    if (pi * *ord > n) break;
    require_depth(log, i);
    power = power.pow(static_cast<unsigned long>(log.prime));
    result = result + log.l[static_cast<std::size_t>(i)] * power;
  }
  return result;
}

GradedSeries exp_series(const ArakiLog& log, int x_trunc) {
  require_depth(log, log_depth_for(log.prime, x_trunc));
  const int p = log.prime;
  GradedSeries e = GradedSeries::variable(p, x_trunc);
  // e = x - sum_{i>=1} l_i e^{p^i}; the x^m coefficient of the sum only
  // involves e_1..e_{m-1}. Coefficients vanish unless m = 1 mod (p-1).
  for (int m = p; m <= x_trunc; m += p - 1) {
    const GradedSeries head = e.truncated(m);
    GradedSeries power = head;
    WeightedPoly acc(p, m - 1);
    long long pi = 1;
    for (int i = 1;; ++i) {
      pi *= p;
      if (pi > m) break;
      power = power.pow(static_cast<unsigned long>(p));
      acc = acc + log.l[static_cast<std::size_t>(i)] * power.coefficient(m);
    }
    e.set_coefficient(m, -acc);
  }
  return e;
}

GradedSeries compose(const GradedSeries& outer, const GradedSeries& inner) {
  const int n = std::min(outer.x_trunc(), inner.x_trunc());
  const auto ord = inner.order();
  GradedSeries result(outer.prime(), n, outer.weight_offset());
  if (!outer.coefficient(0).is_zero())
    result.set_coefficient(0, outer.coefficient(0));
  if (!ord) return result;
  if (*ord < 1) throw std::invalid_argument("compose needs inner series without constant term");
  if (inner.weight_offset() != -1)
    throw HomogeneityViolation("compose needs an inner series of weight offset -1");
  GradedSeries power = inner.truncated(n);
  for (int m = 1; m * *ord <= n; ++m) {
    if (m > 1) power = power * inner;
    if (!outer.coefficient(m).is_zero()) result = result + outer.coefficient(m) * power;
  }
  return result;
}

GradedSeries formal_sum(const ArakiLog& log, const GradedSeries& a, const GradedSeries& b,
                        int x_trunc) {
  const GradedSeries exp = exp_series(log, x_trunc);
  const GradedSeries s = apply_log(log, a.truncated(x_trunc)) + apply_log(log, b.truncated(x_trunc));
  GradedSeries r = compose(exp, s);
  require_integral(r, "formal_sum");
  return r;
}

namespace {

struct PSeriesPieces {
  GradedSeries px, v1xp, v2xp2;
};

PSeriesPieces p_series_pieces(int p, int x_trunc) {
  return {GradedSeries::monomial(WeightedPoly::constant(p, p), 1, x_trunc),
          GradedSeries::monomial(WeightedPoly::term(p, 1, Monomial{1, 0}), p, x_trunc),
          GradedSeries::monomial(WeightedPoly::term(p, 1, Monomial{0, 1}), p * p, x_trunc)};
}

}  // namespace

GradedSeries p_series(const ArakiLog& log, int x_trunc) {
  const auto [a, b, c] = p_series_pieces(log.prime, x_trunc);
  return formal_sum(log, formal_sum(log, a, b, x_trunc), c, x_trunc);
}

GradedSeries p_series_from_log(const ArakiLog& log, int x_trunc) {
  GradedSeries r = compose(exp_series(log, x_trunc),
                           WeightedPoly::constant(log.prime, log.prime) * log_series(log, x_trunc));
  require_integral(r, "p_series_from_log");
  return r;
}

GradedSeries h_series(const ArakiLog& log, int x_trunc) {
  const auto [a, b, c] = p_series_pieces(log.prime, x_trunc);
  return formal_sum(log, a + b, c, x_trunc);
}

GradedSeries negation_series(const ArakiLog& log, int x_trunc) {
  GradedSeries r = compose(exp_series(log, x_trunc), -log_series(log, x_trunc));
  require_integral(r, "negation_series");
  return r;
}

FormalGroup::FormalGroup(int prime, int x_trunc)
    : x_trunc_(x_trunc),
      log_(araki_log(prime, log_depth_for(prime, x_trunc))),
      exp_(exp_series(log_, x_trunc)) {}

GradedSeries FormalGroup::sum(const GradedSeries& a, const GradedSeries& b) const {
  const GradedSeries s = apply_log(log_, a.truncated(x_trunc_)) + apply_log(log_, b.truncated(x_trunc_));
  GradedSeries r = compose(exp_, s);
  require_integral(r, "formal_sum");
  return r;
}

GradedSeries FormalGroup::p_series() const {
  const auto [a, b, c] = p_series_pieces(prime(), x_trunc_);
  return sum(sum(a, b), c);
}

GradedSeries FormalGroup::p_series_from_log() const {
  GradedSeries r = compose(exp_, WeightedPoly::constant(prime(), prime()) * log_series(log_, x_trunc_));
  require_integral(r, "p_series_from_log");
  return r;
}

GradedSeries FormalGroup::h_series() const {
  const auto [a, b, c] = p_series_pieces(prime(), x_trunc_);
  return sum(a + b, c);
}

GradedSeries FormalGroup::negation() const {
  GradedSeries r = compose(exp_, -log_series(log_, x_trunc_));
  require_integral(r, "negation_series");
  return r;
}

SpecializedSeries specialize_v2(const GradedSeries& s, const Precision& prec) {
  if (s.prime() != prec.prime()) throw PrecisionMismatch("prime mismatch in specialize_v2");
  SpecializedSeries out{prec, s.weight_offset(), {}};
  out.coefficients.reserve(static_cast<std::size_t>(s.x_trunc()) + 1);
  const BigInt& mod = prec.modulus();
  for (int m = 0; m <= s.x_trunc(); ++m) {
    std::vector<BigInt> coeffs(static_cast<std::size_t>(prec.u_prec()));
    for (const auto& [mono, c] : s.coefficient(m).terms()) {
      if (p_valuation(BigInt(c.get_den()), prec.prime()) != Valuation(0))
        throw IntegralityViolation("specialize_v2: coefficient of x^" + std::to_string(m) +
                                   " is not p-integral");
      if (mono.v1 >= prec.u_prec()) continue;
      BigInt inv;
      mpz_invert(inv.get_mpz_t(), c.get_den_mpz_t(), mod.get_mpz_t());
      coeffs[static_cast<std::size_t>(mono.v1)] += BigInt(c.get_num()) * inv;
    }
    out.coefficients.push_back(E0Element::from_coefficients(prec, std::move(coeffs)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Specialized tier
//
// Write a series without constant term as x r(y), y = x^{p-1}. Since
// log(x) = sum l_i x^{p^i} and x^{p^i} = x y^{d_i} with d_i = (p^i - 1)/(p - 1),
//   log(x r(y)) = x sum_i l_i y^{d_i} r(y)^{p^i}.
// Given the right-hand side T = log(x r)/x, r is recovered degree by degree:
//   r_m = T_m - sum_{i>=1} l_i [y^{m - d_i}] r^{p^i},
// and the bracket only involves r_0..r_{m-1}. With L_i = p^i l_i integral,
// everything is carried scaled by p^E (E = log depth) modulo p^{Tp+E}. An
// error of p^{Tp} in r moves r^{p^i} by at most p^{Tp+i}, which L_i p^{E-i}
// absorbs, so r comes out exact modulo p^Tp.

namespace {

using Series = std::vector<E0Element>;

struct ScaledLog {
  Precision working;
  int depth = 0;
  std::vector<int> offset;       // d_i
  std::vector<E0Element> scaled;  // L_i = p^i l_i at v2 = 1
};

ScaledLog make_scaled_log(const Precision& target, int y_trunc) {
  const int p = target.prime();
  int depth = 0;
  long long d = 1;
  while (d < y_trunc) {
    ++depth;
    d = d * p + 1;
  }
  ScaledLog s{target.with_p_prec(target.p_prec() + depth), depth, {}, {}};
  const Precision& w = s.working;
  const BigInt& mod = w.modulus();
  long long di = 0;
  long long pi = 1;  // p^{i-1} while building L_i
  for (int i = 0; i <= depth; ++i) {
    s.offset.push_back(static_cast<int>(di));
    di = di * p + 1;
    if (i == 0) {
      s.scaled.push_back(E0Element::constant(w, 1));
      continue;
    }
    E0Accumulator rhs(w);
    if (pi < w.u_prec())
      rhs.add_product(s.scaled[static_cast<std::size_t>(i - 1)],
                      E0Element::monomial(w, 1, static_cast<int>(pi)));
    if (i >= 2) rhs.add_scaled(BigInt(p), s.scaled[static_cast<std::size_t>(i - 2)]);
    // 1 - p^{p^i - 1}, a unit; its p-power part vanishes once it reaches p^W.
    const long long ex = pi * p - 1;
    BigInt unit = 1;
    if (ex < w.p_prec()) unit -= ipow(p, static_cast<unsigned long>(ex));
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    s.scaled.push_back(inv * rhs.finish());
    pi *= p;
  }
  return s;
}

Series zero_series(const Precision& prec, int len) {
  return Series(static_cast<std::size_t>(len), E0Element(prec));
}

Series series_mul(const Series& a, const Series& b, int len) {
  const Precision& prec = a.front().precision();
  std::vector<int> nz_a, nz_b;
  for (int i = 0; i < len && i < static_cast<int>(a.size()); ++i)
    if (!a[static_cast<std::size_t>(i)].is_zero()) nz_a.push_back(i);
  for (int i = 0; i < len && i < static_cast<int>(b.size()); ++i)
    if (!b[static_cast<std::size_t>(i)].is_zero()) nz_b.push_back(i);
  std::vector<E0Accumulator> acc(static_cast<std::size_t>(len), E0Accumulator(prec));
  for (int i : nz_a)
    for (int j : nz_b) {
      if (i + j >= len) break;
      acc[static_cast<std::size_t>(i + j)].add_product(a[static_cast<std::size_t>(i)],
                                                      b[static_cast<std::size_t>(j)]);
    }
  Series r;
  r.reserve(static_cast<std::size_t>(len));
  for (auto& x : acc) r.push_back(x.finish());
  return r;
}

Series series_pow(const Series& a, unsigned long n, int len) {
  const Precision& prec = a.front().precision();
  Series result = zero_series(prec, len);
  if (len > 0) result[0] = E0Element::constant(prec, 1);
  Series base = a;
  base.resize(static_cast<std::size_t>(len), E0Element(prec));
  while (n > 0) {
    if (n & 1UL) result = series_mul(result, base, len);
    n >>= 1;
    if (n > 0) base = series_mul(base, base, len);
  }
  return result;
}

// p^E * log(x r)/x through y^{len-1}; r at the working precision.
Series scaled_log_over_x(const ScaledLog& slog, const Series& r, int len) {
  const Precision& w = slog.working;
  const int p = w.prime();
  std::vector<E0Accumulator> acc(static_cast<std::size_t>(len), E0Accumulator(w));
  Series power = r;
  power.resize(static_cast<std::size_t>(len), E0Element(w));
  for (int i = 0; i <= slog.depth; ++i) {
    const int d = slog.offset[static_cast<std::size_t>(i)];
    if (d >= len) break;
    if (i > 0) power = series_pow(power, static_cast<unsigned long>(p), len - d);
    const E0Element coeff = ipow(p, static_cast<unsigned long>(slog.depth - i)) *
                            slog.scaled[static_cast<std::size_t>(i)];
    for (int m = 0; m + d < len && m < static_cast<int>(power.size()); ++m)
      if (!power[static_cast<std::size_t>(m)].is_zero())
        acc[static_cast<std::size_t>(m + d)].add_product(coeff, power[static_cast<std::size_t>(m)]);
  }
  Series out;
  for (auto& a : acc) out.push_back(a.finish());
  return out;
}

void check_q_homogeneity(const Series& r) {
  if (r.empty()) return;
  const int p = r.front().precision().prime();
  for (int m = 0; m < static_cast<int>(r.size()); ++m) {
    const auto& c = r[static_cast<std::size_t>(m)];
    for (int a = 0; a < c.length(); ++a) {
      if (c.coefficient(a) == 0) continue;
      if (a > m || (m - a) % (p + 1) != 0)
        throw HomogeneityViolation("coefficient of y^" + std::to_string(m) + " contains u1^" +
                                   std::to_string(a) + ", which has no nonnegative v2-exponent");
    }
  }
}

// Solves log(x r) = x T for r given the scaled target p^E T.
Series solve_log_equation(const ScaledLog& slog, const Precision& target_prec,
                          const Series& scaled_target, int len) {
  const Precision& w = slog.working;
  const int p = w.prime();
  const int depth = slog.depth;

  // Online power chain: node 0 is r, level i ends at r^{p^i}.
  struct Node {
    int left, right;
  };
  std::vector<Series> values(1, zero_series(w, len));
  std::vector<Node> nodes(1, Node{-1, -1});
  std::vector<int> level_top{0};
  for (int i = 1; i <= depth; ++i) {
    const int base = level_top.back();
    int prev = base;
    for (int k = 2; k <= p; ++k) {
      nodes.push_back(Node{prev, base});
      values.push_back(zero_series(w, len));
      prev = static_cast<int>(nodes.size()) - 1;
    }
    level_top.push_back(prev);
  }

  std::vector<E0Element> weighted;
  for (int i = 0; i <= depth; ++i)
    weighted.push_back(ipow(p, static_cast<unsigned long>(depth - i)) *
                       slog.scaled[static_cast<std::size_t>(i)]);

  Series r;
  r.reserve(static_cast<std::size_t>(len));
  for (int m = 0; m < len; ++m) {
    if (m >= 1) {
      const int deg = m - 1;
      for (std::size_t n = 1; n < nodes.size(); ++n) {
        const Series& a = values[static_cast<std::size_t>(nodes[n].left)];
        const Series& b = values[static_cast<std::size_t>(nodes[n].right)];
        E0Accumulator acc(w);
        for (int k = 0; k <= deg; ++k) {
          const auto& x = a[static_cast<std::size_t>(k)];
          const auto& y = b[static_cast<std::size_t>(deg - k)];
          if (!x.is_zero() && !y.is_zero()) acc.add_product(x, y);
        }
        values[n][static_cast<std::size_t>(deg)] = acc.finish();
      }
    }
    E0Accumulator acc(w);
    acc.add(scaled_target[static_cast<std::size_t>(m)]);
    for (int i = 1; i <= depth; ++i) {
      const int d = slog.offset[static_cast<std::size_t>(i)];
      if (d > m) break;
      const auto& x = values[static_cast<std::size_t>(level_top[static_cast<std::size_t>(i)])]
                            [static_cast<std::size_t>(m - d)];
      if (!x.is_zero()) acc.sub_product(weighted[static_cast<std::size_t>(i)], x);
    }
    const E0Element scaled = acc.finish();
    E0Element rm(target_prec);
    if (depth == 0) {
      rm = scaled.reduced(target_prec);
    } else {
      try {
        rm = scaled.divide_exact(Divisor::p, depth);
      } catch (const NotDivisible&) {
        throw IntegralityViolation("coefficient of y^" + std::to_string(m) +
                                   " is not p-integral: " + scaled.to_string() + " / p^" +
                                   std::to_string(depth));
      }
    }
    values[0][static_cast<std::size_t>(m)] = rm.lifted(w);
    r.push_back(std::move(rm));
  }
  check_q_homogeneity(r);
  return r;
}

int y_trunc_for(int prime, int x_trunc) {
  if (x_trunc < 1) throw std::invalid_argument("x-truncation must be >= 1");
  return (x_trunc - 1) / (prime - 1) + 1;
}

SpecializedSeries to_x_indexed(const Precision& prec, const Series& r, int x_trunc) {
  const int p = prec.prime();
  SpecializedSeries out{prec, -1, zero_series(prec, x_trunc + 1)};
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    out.coefficients[static_cast<std::size_t>(i * (p - 1) + 1)] = r[static_cast<std::size_t>(i)];
  return out;
}

// x r(y) for the monomial x * c * y^k with c = p^a u1^b.
Series monomial_r(const Precision& w, int len, const BigInt& c, int u1_exp, int y_exp) {
  Series s = zero_series(w, len);
  if (y_exp < len) s[static_cast<std::size_t>(y_exp)] = E0Element::monomial(w, c, u1_exp);
  return s;
}

Series add_series(Series a, const Series& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

SpecializedSeries p_series_specialized(const Precision& prec, int x_trunc, PSeriesRoute route) {
  const int p = prec.prime();
  const int len = y_trunc_for(p, x_trunc);
  const ScaledLog slog = make_scaled_log(prec, len);
  const Precision& w = slog.working;
  Series r;
  if (route == PSeriesRoute::scaled_log) {
    // p * log(x)/x = sum_i p l_i y^{d_i}
    Series target = zero_series(w, len);
    for (int i = 0; i <= slog.depth; ++i) {
      const int d = slog.offset[static_cast<std::size_t>(i)];
      if (d >= len) break;
      target[static_cast<std::size_t>(d)] =
          ipow(p, static_cast<unsigned long>(slog.depth - i + 1)) * slog.scaled[static_cast<std::size_t>(i)];
    }
    r = solve_log_equation(slog, prec, target, len);
  } else {
    const Series px = monomial_r(w, len, p, 0, 0);
    const Series v1xp = monomial_r(w, len, 1, 1, 1);
    const Series v2xp2 = monomial_r(w, len, 1, 0, p + 1);
    const Series first = solve_log_equation(
        slog, prec, add_series(scaled_log_over_x(slog, px, len), scaled_log_over_x(slog, v1xp, len)),
        len);
    Series lifted;
    for (const auto& c : first) lifted.push_back(c.lifted(w));
    r = solve_log_equation(
        slog, prec,
        add_series(scaled_log_over_x(slog, lifted, len), scaled_log_over_x(slog, v2xp2, len)), len);
  }
  return to_x_indexed(prec, r, x_trunc);
}

SpecializedSeries h_series_specialized(const Precision& prec, int x_trunc) {
  const int p = prec.prime();
  const int len = y_trunc_for(p, x_trunc);
  const ScaledLog slog = make_scaled_log(prec, len);
  const Precision& w = slog.working;
  const Series naive = add_series(monomial_r(w, len, p, 0, 0), monomial_r(w, len, 1, 1, 1));
  const Series v2xp2 = monomial_r(w, len, 1, 0, p + 1);
  const Series r = solve_log_equation(
      slog, prec, add_series(scaled_log_over_x(slog, naive, len), scaled_log_over_x(slog, v2xp2, len)),
      len);
  return to_x_indexed(prec, r, x_trunc);
}

}  // namespace jh::fgl
