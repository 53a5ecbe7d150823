#pragma once

// The James-Hopf image jh*(y^k) = s_k / p, its pairing against monochromatic
// classes v2^k / (p^{i+1} v1^j) in M = E_* / (p^inf, v1^inf), Hopf-invariant
// detection and the trace form tr(ab)/p on E^0[y]/q0.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jh/arith.hpp"
#include "jh/sigmap.hpp"
#include "jh/symm.hpp"

namespace jh::mono {

// v2^v2_pow / (p^p_exp v1^v1_pow).
struct MonoClass {
  int v2_pow = 0;
  int p_exp = 1;
  int v1_pow = 1;

  // (i, j, k) -> v2^k / (p^{i+1} v1^j). Throws std::invalid_argument unless
  // i >= 0, j >= 1, k >= 0.
  static MonoClass from_ijk(int i, int j, int v2_pow);

  int i() const { return p_exp - 1; }
  int j() const { return v1_pow; }
  // p^i | j. Recorded, not enforced.
  bool divisibility_ok(int prime) const;
  std::string to_string() const;
};

// Finite sum of c / (p^alpha v1^beta), alpha, beta >= 1. Canonical form: at
// most one term per beta, p does not divide c, and 0 < c < p^alpha.
class MElement {
 public:
  using Key = std::pair<int, int>;  // (alpha, beta)

  explicit MElement(int prime) : prime_(prime) {}

  // Adds c / (p^alpha v1^beta); beta <= 0 contributes nothing.
  void add_term(int alpha, int beta, const BigInt& c);

  int prime() const { return prime_; }
  const std::map<Key, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::vector<Key> support() const;

  friend MElement operator+(const MElement& a, const MElement& b);
  bool operator==(const MElement& o) const { return prime_ == o.prime_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  int prime_;
  std::map<Key, BigInt> terms_;
};

struct JHImage {
  int k = 0;
  E0Element value;  // s_k / p
  Precision certified;
  int weight = 0;  // weight of s_k; division by p keeps it
};

// divide_exact(s_k, p, 1). NotDivisible would falsify integrality of jh*.
JHImage jh_image(const symm::PowerSumTable& table, int k);
std::vector<JHImage> jh_images(const symm::PowerSumTable& table, int k_max);

// sum_{t < j} (g_t mod p^{i+1}) / (p^{i+1} v1^{j-t}). The v2-power of mu is
// carried by weight bookkeeping, not by the pairing. InsufficientPrecision
// unless g is known mod p^{i+1} and mod u1^j.
MElement pair(const MonoClass& mu, const E0Element& g);

struct DetectionReport {
  int prime = 0;
  MonoClass input;
  int filtration = 0;
  int detector_v2 = 0;
  int detector_v1 = 0;
  MElement value{0};
  int scan_lo = 1;
  int scan_hi = 0;
  // Every k in (filtration, scan_hi] pairs to zero and the interval is
  // nonempty.
  bool zero_above = false;
  // p^i does not divide j: outside the range of the closed form.
  bool exploratory = false;
  Precision precision{3, 1, 1};  // working precision of the pipeline
  Precision certified{3, 1, 1};  // precision of the images, one p lost to s_k / p
  int x_trunc = 0;
  std::vector<int> nonzero_k;   // all k in the window with a nonzero pairing
  std::vector<JHImage> images;  // k = 1..scan_hi

  // (p^2-1) v2_pow - (p-1) v1_pow
  //   = (p^2-1) detector_v2 - (p-1) detector_v1 + (p-1) filtration
  bool degree_consistent() const;
};

struct HopfOptions {
  int window = -1;  // -1: 2p
  int p_prec = 0;   // 0: i + 4
  int u_prec = 0;   // 0: j + 3
  int x_trunc = 0;  // 0: automatic
};

DetectionReport hopf_invariant(int prime, int i, int j, int v2_pow,
                               const HopfOptions& options = {});

// Detection from precomputed images k = 1..K, scanning K down to 1.
// EmptyWindow if nothing pairs nonzero.
DetectionReport detect_from_images(int prime, const MonoClass& mu, std::vector<JHImage> images);

// Leading term of a nonzero value: largest v1-denominator, then largest
// p-denominator.
MElement::Key leading_key(const MElement& m);

struct UnitInvariance {
  bool filtration = false;
  bool detector = false;
  bool leading_term = false;  // (alpha, beta) of the leading term
  // The whole support. A unit with u1-terms adds terms of lower v1-order, so
  // this is only expected for units in Z_p.
  bool full_support = false;
  bool ok() const { return filtration && detector && leading_term; }
};

// Repeats the detection with every image multiplied by the unit u.
UnitInvariance unit_invariance(const DetectionReport& report, const E0Element& u);
bool unit_invariance_check(const DetectionReport& report, const E0Element& u);

// Entry (a, b), a = 0..p, b = 1..p+1, is s_{a+b} / p.
using Gram = std::vector<std::vector<E0Element>>;
Gram trace_form_gram(const sigmap::WeierstrassPoly& w, const symm::PowerSumTable& table);

struct GramPattern {
  bool antidiagonal_units = true;      // a + b = p + 1
  bool above_in_maximal_ideal = true;  // a + b < p + 1
  std::vector<std::pair<int, int>> failures;
  bool ok() const { return antidiagonal_units && above_in_maximal_ideal; }
};

GramPattern gram_pattern(const Gram& g, int prime);

}  // namespace jh::mono
