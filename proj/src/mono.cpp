#include "jh/mono.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jh::mono {

MonoClass MonoClass::from_ijk(int i, int j, int v2_pow) {
  if (i < 0 || j < 1 || v2_pow < 0)
    throw std::invalid_argument("monochromatic class needs i >= 0, j >= 1, v2 power >= 0");
  return MonoClass{v2_pow, i + 1, j};
}

bool MonoClass::divisibility_ok(int prime) const {
  return j() % ipow(prime, static_cast<unsigned long>(i())) == 0;
}

std::string MonoClass::to_string() const {
  std::ostringstream os;
  os << "v2^" << v2_pow << "/(p^" << p_exp << " v1^" << v1_pow << ")";
  return os.str();
}

void MElement::add_term(int alpha, int beta, const BigInt& c) {
  if (alpha < 1) throw std::invalid_argument("p-denominator exponent must be >= 1");
  if (beta < 1) return;
  // Merge with any existing term of the same beta over the larger denominator.
  BigInt num = c;
  int a = alpha;
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [beta](const auto& kv) { return kv.first.second == beta; });
  if (it != terms_.end()) {
    const int b = it->first.first;
    const int top = std::max(a, b);
    num = num * ipow(prime_, static_cast<unsigned long>(top - a)) +
          it->second * ipow(prime_, static_cast<unsigned long>(top - b));
    a = top;
    terms_.erase(it);
  }
  BigInt mod = ipow(prime_, static_cast<unsigned long>(a));
  mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  if (num == 0) return;
  while (a > 0 && mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(prime_))) {
    num /= prime_;
    --a;
  }
  if (a == 0) return;
  terms_.emplace(Key{a, beta}, num);
}

std::vector<MElement::Key> MElement::support() const {
  std::vector<Key> out;
  for (const auto& kv : terms_) out.push_back(kv.first);
  return out;
}

MElement operator+(const MElement& a, const MElement& b) {
  if (a.prime_ != b.prime_) throw std::invalid_argument("MElement primes differ");
  MElement out = a;
  for (const auto& [key, c] : b.terms_) out.add_term(key.first, key.second, c);
  return out;
}

std::string MElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.get_str() << "/(p";
    if (it->first.first != 1) os << "^" << it->first.first;
    os << " v1";
    if (it->first.second != 1) os << "^" << it->first.second;
    os << ")";
  }
  return os.str();
}

JHImage jh_image(const symm::PowerSumTable& table, int k) {
  if (k < 1 || k > table.bound())
    throw std::out_of_range("power sum s_" + std::to_string(k) + " not in table");
  const E0Element& s = table.at(k);
  const int p = s.precision().prime();
  E0Element value = s.divide_exact(Divisor::p, 1);
  Precision certified = value.precision();
  return JHImage{k, std::move(value), certified, symm::power_sum_weight(p, k)};
}

std::vector<JHImage> jh_images(const symm::PowerSumTable& table, int k_max) {
  std::vector<JHImage> out;
  for (int k = 1; k <= k_max; ++k) out.push_back(jh_image(table, k));
  return out;
}

MElement pair(const MonoClass& mu, const E0Element& g) {
  const Precision& prec = g.precision();
  const int p = prec.prime();
  if (prec.p_prec() < mu.p_exp || prec.u_prec() < mu.v1_pow)
    throw InsufficientPrecision("pairing with " + mu.to_string() + " needs precision (p^" +
                                std::to_string(mu.p_exp) + ", u1^" + std::to_string(mu.v1_pow) +
                                "), have " + prec.to_string());
  MElement out(p);
  for (int t = 0; t < mu.v1_pow; ++t) {
    const BigInt c = g.coefficient(t);
    if (c != 0) out.add_term(mu.p_exp, mu.v1_pow - t, c);
  }
  return out;
}

MElement::Key leading_key(const MElement& m) {
  if (m.is_zero()) throw std::invalid_argument("zero has no leading term");
  return std::max_element(m.terms().begin(), m.terms().end(),
                          [](const auto& a, const auto& b) {
                            return std::pair(a.first.second, a.first.first) <
                                   std::pair(b.first.second, b.first.first);
                          })
      ->first;
}

bool DetectionReport::degree_consistent() const {
  const long p = prime;
  const long lhs = (p * p - 1) * input.v2_pow - (p - 1) * input.v1_pow;
  const long rhs = (p * p - 1) * detector_v2 - (p - 1) * detector_v1 + (p - 1) * filtration;
  return lhs == rhs;
}

DetectionReport detect_from_images(int prime, const MonoClass& mu, std::vector<JHImage> images) {
  if (images.empty()) throw std::invalid_argument("no James-Hopf images to scan");
  DetectionReport r;
  r.prime = prime;
  r.input = mu;
  r.exploratory = !mu.divisibility_ok(prime);
  r.scan_lo = images.front().k;
  r.scan_hi = images.back().k;
  r.precision = images.front().certified;
  r.certified = images.front().certified;

  std::optional<MElement> found;
  for (auto it = images.rbegin(); it != images.rend(); ++it) {
    MElement v = pair(mu, it->value);
    if (v.is_zero()) continue;
    r.nonzero_k.push_back(it->k);
    if (!found) {
      found = std::move(v);
      r.filtration = it->k;
    }
  }
  std::reverse(r.nonzero_k.begin(), r.nonzero_k.end());
  if (!found)
    throw EmptyWindow("no nonzero pairing with " + mu.to_string() + " for k in [" +
                      std::to_string(r.scan_lo) + ", " + std::to_string(r.scan_hi) + "]");
  r.value = std::move(*found);
  r.zero_above = r.filtration < r.scan_hi;

  // Leading term: largest v1-denominator, then largest p-denominator. It comes
  // from the u1^t monomial of s_k with t = j - beta, which carries
  // v2^{-(k+t)/(p+1)}.
  const int beta = leading_key(r.value).second;
  const int t = mu.v1_pow - beta;
  if ((r.filtration + t) % (prime + 1) != 0)
    throw HomogeneityViolation("u1^" + std::to_string(t) + " in s_" + std::to_string(r.filtration) +
                               " has no integral v2-exponent");
  r.detector_v1 = beta;
  r.detector_v2 = mu.v2_pow - (r.filtration + t) / (prime + 1);
  if (!r.degree_consistent())
    throw InvariantViolation("detection report for " + mu.to_string() + " fails degree consistency");
  r.images = std::move(images);
  return r;
}

DetectionReport hopf_invariant(int prime, int i, int j, int v2_pow, const HopfOptions& options) {
  const MonoClass mu = MonoClass::from_ijk(i, j, v2_pow);
  if (v2_pow < j) throw std::invalid_argument("v2 power must be >= j");
  const int window = options.window < 0 ? 2 * prime : options.window;
  const Precision prec(prime, options.p_prec > 0 ? options.p_prec : i + 4,
                       options.u_prec > 0 ? options.u_prec : j + 3);
  const int top = prime * j + i + 1 + window;

  const sigmap::WeierstrassPoly w = sigmap::weierstrass_of_p_series(prec, options.x_trunc);
  const symm::PowerSumTable table = symm::power_sums_newton(symm::elementary_from_weierstrass(w), top);
  DetectionReport r = detect_from_images(prime, mu, jh_images(table, top));
  r.x_trunc = w.x_trunc;
  r.precision = prec;
  return r;
}

UnitInvariance unit_invariance(const DetectionReport& report, const E0Element& u) {
  if (!u.is_unit()) throw NotAUnit("unit_invariance_check needs a unit, got " + u.to_string());
  std::vector<JHImage> scaled;
  scaled.reserve(report.images.size());
  for (const JHImage& im : report.images) {
    const E0Element uu = u.precision() == im.value.precision() ? u : u.reduced(im.value.precision());
    scaled.push_back(JHImage{im.k, uu * im.value, im.certified, im.weight});
  }
  const DetectionReport again = detect_from_images(report.prime, report.input, std::move(scaled));
  UnitInvariance out;
  out.filtration = again.filtration == report.filtration;
  out.detector = again.detector_v2 == report.detector_v2 && again.detector_v1 == report.detector_v1;
  out.leading_term = leading_key(again.value) == leading_key(report.value);
  out.full_support = again.value.support() == report.value.support();
  return out;
}

bool unit_invariance_check(const DetectionReport& report, const E0Element& u) {
  return unit_invariance(report, u).ok();
}

Gram trace_form_gram(const sigmap::WeierstrassPoly& w, const symm::PowerSumTable& table) {
  const int p = w.certified.prime();
  if (table.bound() < 2 * p + 1)
    throw std::out_of_range("trace form needs power sums through s_" + std::to_string(2 * p + 1));
  Gram g;
  for (int a = 0; a <= p; ++a) {
    std::vector<E0Element> row;
    for (int b = 1; b <= p + 1; ++b) row.push_back(table.at(a + b).divide_exact(Divisor::p, 1));
    g.push_back(std::move(row));
  }
  return g;
}

GramPattern gram_pattern(const Gram& g, int prime) {
  GramPattern out;
  for (int a = 0; a <= prime; ++a) {
    for (int b = 1; b <= prime + 1; ++b) {
      const E0Element& x = g.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b - 1));
      if (a + b == prime + 1 && !x.is_unit()) {
        out.antidiagonal_units = false;
        out.failures.emplace_back(a, b);
      } else if (a + b < prime + 1 && x.is_unit()) {
        out.above_in_maximal_ideal = false;
        out.failures.emplace_back(a, b);
      }
    }
  }
  return out;
}

}  // namespace jh::mono
