#include "jh/arith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jh {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

BigInt ipow(long p, unsigned long n) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), n);
  return r;
}

int Valuation::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite valuation");
  return value_;
}

Valuation operator+(Valuation a, Valuation b) {
  if (a.infinite_ || b.infinite_) return Valuation::infinity();
  return Valuation(a.value_ + b.value_);
}

std::string Valuation::to_string() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

Valuation p_valuation(const BigInt& n, long p) {
  if (n == 0) return Valuation::infinity();
  BigInt q = n;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return Valuation(v);
}

Precision::Precision(int prime, int p_prec, int u_prec)
    : prime_(prime), p_prec_(p_prec), u_prec_(u_prec) {
  if (prime == 2)
    throw std::invalid_argument("p = 2 is not supported (odd primes only)");
  if (!is_prime(prime))
    throw std::invalid_argument(std::to_string(prime) + " is not an odd prime");
  if (p_prec < 1 || u_prec < 1)
    throw std::invalid_argument("precisions must be positive");
  modulus_ = std::make_shared<const BigInt>(ipow(prime, p_prec));
}

std::string Precision::to_string() const {
  std::ostringstream os;
  os << "(p=" << prime_ << ", mod p^" << p_prec_ << ", mod u1^" << u_prec_ << ")";
  return os.str();
}

E0Element::E0Element(Precision prec) : prec_(std::move(prec)) {}

E0Element E0Element::constant(const Precision& prec, const BigInt& c) {
  return from_coefficients(prec, {c});
}

E0Element E0Element::monomial(const Precision& prec, const BigInt& c, int u1_exp) {
  if (u1_exp < 0) throw std::invalid_argument("negative u1 exponent");
  if (u1_exp >= prec.u_prec()) return E0Element(prec);
  std::vector<BigInt> coeffs(static_cast<std::size_t>(u1_exp) + 1);
  coeffs.back() = c;
  return from_coefficients(prec, std::move(coeffs));
}

E0Element E0Element::from_coefficients(const Precision& prec,
                                       std::vector<BigInt> coeffs) {
  E0Element r(prec);
  if (coeffs.size() > static_cast<std::size_t>(prec.u_prec()))
    coeffs.resize(static_cast<std::size_t>(prec.u_prec()));
  r.coeffs_ = std::move(coeffs);
  r.normalize();
  return r;
}

void E0Element::normalize() {
  const BigInt& mod = prec_.modulus();
  for (auto& c : coeffs_) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt E0Element::coefficient(int t) const {
  if (t < 0 || t >= length()) return 0;
  return coeffs_[static_cast<std::size_t>(t)];
}

namespace {

void require_same(const Precision& a, const Precision& b) {
  if (!(a == b))
    throw PrecisionMismatch("precision mismatch: " + a.to_string() + " vs " +
                            b.to_string());
}

}  // namespace

E0Element E0Element::operator-() const {
  E0Element r(prec_);
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) r.coeffs_.push_back(c == 0 ? BigInt(0) : prec_.modulus() - c);
  r.normalize();
  return r;
}

E0Element& E0Element::operator+=(const E0Element& b) {
  require_same(prec_, b.prec_);
  if (coeffs_.size() < b.coeffs_.size()) coeffs_.resize(b.coeffs_.size());
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  normalize();
  return *this;
}

E0Element& E0Element::operator-=(const E0Element& b) {
  require_same(prec_, b.prec_);
  if (coeffs_.size() < b.coeffs_.size()) coeffs_.resize(b.coeffs_.size());
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  normalize();
  return *this;
}

E0Element operator+(const E0Element& a, const E0Element& b) {
  E0Element r = a;
  r += b;
  return r;
}

E0Element operator-(const E0Element& a, const E0Element& b) {
  E0Element r = a;
  r -= b;
  return r;
}

E0Element operator*(const E0Element& a, const E0Element& b) {
  E0Accumulator acc(a.precision());
  acc.add_product(a, b);
  return acc.finish();
}

E0Element operator*(const BigInt& c, const E0Element& a) {
  E0Accumulator acc(a.precision());
  acc.add_scaled(c, a);
  return acc.finish();
}

Valuation E0Element::p_valuation() const {
  Valuation best = Valuation::infinity();
  for (const auto& c : coeffs_) best = std::min(best, jh::p_valuation(c, prec_.prime()));
  return best;
}

Valuation E0Element::u1_valuation() const {
  for (std::size_t t = 0; t < coeffs_.size(); ++t)
    if (coeffs_[t] != 0) return Valuation(static_cast<int>(t));
  return Valuation::infinity();
}

bool E0Element::is_unit() const {
  return !coeffs_.empty() &&
         !mpz_divisible_ui_p(coeffs_[0].get_mpz_t(),
                             static_cast<unsigned long>(prec_.prime()));
}

E0Element E0Element::inverse() const {
  if (!is_unit()) throw NotAUnit("inverse of a non-unit: " + to_string());
  const BigInt& mod = prec_.modulus();
  BigInt a0inv;
  mpz_invert(a0inv.get_mpz_t(), coeffs_[0].get_mpz_t(), mod.get_mpz_t());
  const int n = prec_.u_prec();
  std::vector<BigInt> r(static_cast<std::size_t>(n));
  r[0] = a0inv;
  for (int k = 1; k < n; ++k) {
    BigInt s = 0;
    for (int i = 1; i <= k && i < length(); ++i) s += coeffs_[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(k - i)];
    s = -s * a0inv;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    r[static_cast<std::size_t>(k)] = s;
  }
  return from_coefficients(prec_, std::move(r));
}

E0Element E0Element::divide_exact(Divisor by, int times) const {
  if (times < 1) throw std::invalid_argument("divide_exact needs times >= 1");
  if (by == Divisor::p) {
    if (times >= prec_.p_prec())
      throw InsufficientPrecision("dividing by p^" + std::to_string(times) +
                                  " exhausts p-precision " + std::to_string(prec_.p_prec()));
    const BigInt d = ipow(prec_.prime(), static_cast<unsigned long>(times));
    std::vector<BigInt> q;
    q.reserve(coeffs_.size());
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      if (!mpz_divisible_p(coeffs_[t].get_mpz_t(), d.get_mpz_t()))
        throw NotDivisible(to_string() + " is not divisible by p^" + std::to_string(times) +
                           " (u1^" + std::to_string(t) + " coefficient)");
      BigInt c;
      mpz_divexact(c.get_mpz_t(), coeffs_[t].get_mpz_t(), d.get_mpz_t());
      q.push_back(std::move(c));
    }
    return from_coefficients(prec_.with_p_prec(prec_.p_prec() - times), std::move(q));
  }
  if (times >= prec_.u_prec())
    throw InsufficientPrecision("dividing by u1^" + std::to_string(times) +
                                " exhausts u1-precision " + std::to_string(prec_.u_prec()));
  for (int t = 0; t < times && t < length(); ++t)
    if (coeffs_[static_cast<std::size_t>(t)] != 0)
      throw NotDivisible(to_string() + " is not divisible by u1^" + std::to_string(times));
  std::vector<BigInt> q;
  for (int t = times; t < length(); ++t) q.push_back(coeffs_[static_cast<std::size_t>(t)]);
  return from_coefficients(prec_.with_u_prec(prec_.u_prec() - times), std::move(q));
}

E0Element E0Element::reduced(const Precision& coarser) const {
  if (coarser.prime() != prec_.prime() || coarser.p_prec() > prec_.p_prec() ||
      coarser.u_prec() > prec_.u_prec())
    throw PrecisionMismatch("cannot reduce " + prec_.to_string() + " to " + coarser.to_string());
  return from_coefficients(coarser, coeffs_);
}

E0Element E0Element::lifted(const Precision& finer) const {
  if (finer.prime() != prec_.prime() || finer.p_prec() < prec_.p_prec() ||
      finer.u_prec() < prec_.u_prec())
    throw PrecisionMismatch("cannot lift " + prec_.to_string() + " to " + finer.to_string());
  return from_coefficients(finer, coeffs_);
}

std::string E0Element::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (coeffs_[t] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (t == 0) {
      os << coeffs_[t].get_str();
      continue;
    }
    if (coeffs_[t] != 1) os << coeffs_[t].get_str() << "*";
    os << "u1";
    if (t > 1) os << "^" << t;
  }
  return os.str();
}

E0Accumulator::E0Accumulator(const Precision& prec)
    : prec_(prec), acc_(static_cast<std::size_t>(prec.u_prec())) {}

void E0Accumulator::check(const E0Element& a) const { require_same(prec_, a.precision()); }

void E0Accumulator::add(const E0Element& a) {
  check(a);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) acc_[i] += a.coeffs_[i];
}

void E0Accumulator::sub(const E0Element& a) {
  check(a);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) acc_[i] -= a.coeffs_[i];
}

void E0Accumulator::add_product(const E0Element& a, const E0Element& b) {
  check(a);
  check(b);
  const std::size_t n = acc_.size();
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    const std::size_t lim = std::min(b.coeffs_.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      if (b.coeffs_[j] == 0) continue;
      mpz_addmul(acc_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
}

void E0Accumulator::sub_product(const E0Element& a, const E0Element& b) {
  check(a);
  check(b);
  const std::size_t n = acc_.size();
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    const std::size_t lim = std::min(b.coeffs_.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      if (b.coeffs_[j] == 0) continue;
      mpz_submul(acc_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
}

void E0Accumulator::add_scaled(const BigInt& c, const E0Element& a) {
  check(a);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    mpz_addmul(acc_[i].get_mpz_t(), c.get_mpz_t(), a.coeffs_[i].get_mpz_t());
}

E0Element E0Accumulator::finish() const { return E0Element::from_coefficients(prec_, acc_); }

}  // namespace jh
