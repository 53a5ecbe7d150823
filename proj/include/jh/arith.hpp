#pragma once

// Coefficient arithmetic: truncated p-adic integers and the truncated complete
// local ring Z_p[[u1]] / (p^Tp, u1^Tu), which is E_2^0 after setting v2 = 1.

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jh/errors.hpp"

namespace jh {

using BigInt = mpz_class;

bool is_prime(long n);

// Exact power p^n as a big integer.
BigInt ipow(long p, unsigned long n);

// A valuation is a nonnegative integer or +infinity (the valuation of zero).
class Valuation {
 public:
  constexpr explicit Valuation(int v) : value_(v), infinite_(false) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  int value() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a,
                                                    const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend Valuation operator+(Valuation a, Valuation b);

  std::string to_string() const;

 private:
  constexpr Valuation() : value_(0), infinite_(true) {}
  int value_;
  bool infinite_;
};

// p-adic valuation of an integer; infinity for zero.
Valuation p_valuation(const BigInt& n, long p);

// Working precision: coefficients live in Z/p^p_prec, u1-exponents below u_prec.
class Precision {
 public:
  // Throws std::invalid_argument unless prime is an odd prime and both
  // precisions are positive.
  Precision(int prime, int p_prec, int u_prec);

  int prime() const { return prime_; }
  int p_prec() const { return p_prec_; }
  int u_prec() const { return u_prec_; }
  const BigInt& modulus() const { return *modulus_; }

  Precision with_p_prec(int p_prec) const { return {prime_, p_prec, u_prec_}; }
  Precision with_u_prec(int u_prec) const { return {prime_, p_prec_, u_prec}; }

  bool operator==(const Precision& o) const {
    return prime_ == o.prime_ && p_prec_ == o.p_prec_ && u_prec_ == o.u_prec_;
  }

  std::string to_string() const;

 private:
  int prime_;
  int p_prec_;
  int u_prec_;
  std::shared_ptr<const BigInt> modulus_;
};

enum class Divisor { p, u1 };

// Element of Z_p[[u1]] known modulo (p^Tp, u1^Tu). Coefficients are stored as
// canonical residues in [0, p^Tp) with trailing zeros trimmed, so equality is
// structural.
class E0Element {
 public:
  explicit E0Element(Precision prec);

  static E0Element constant(const Precision& prec, const BigInt& c);
  static E0Element monomial(const Precision& prec, const BigInt& c, int u1_exp);
  static E0Element from_coefficients(const Precision& prec,
                                     std::vector<BigInt> coeffs);

  const Precision& precision() const { return prec_; }
  std::span<const BigInt> coefficients() const { return coeffs_; }
  // Coefficient of u1^t (zero beyond the stored range).
  BigInt coefficient(int t) const;
  bool is_zero() const { return coeffs_.empty(); }
  // Number of stored coefficients (one past the highest nonzero u1-exponent).
  int length() const { return static_cast<int>(coeffs_.size()); }

  E0Element operator-() const;
  friend E0Element operator+(const E0Element& a, const E0Element& b);
  friend E0Element operator-(const E0Element& a, const E0Element& b);
  friend E0Element operator*(const E0Element& a, const E0Element& b);
  friend E0Element operator*(const BigInt& c, const E0Element& a);
  E0Element& operator+=(const E0Element& b);
  E0Element& operator-=(const E0Element& b);

  bool operator==(const E0Element& o) const {
    return prec_ == o.prec_ && coeffs_ == o.coeffs_;
  }

  // Minimum p-adic valuation of the coefficients; certified only below Tp.
  Valuation p_valuation() const;
  Valuation u1_valuation() const;
  // Unit of Z_p[[u1]] iff the constant term is prime to p.
  bool is_unit() const;
  // Multiplicative inverse of a unit (NotAUnit otherwise).
  E0Element inverse() const;

  // Exact division by p^times or u1^times. The certified precision drops by
  // `times` in the corresponding direction. NotDivisible if any coefficient
  // fails the divisibility; InsufficientPrecision if nothing would remain.
  E0Element divide_exact(Divisor by, int times) const;

  // Reduction to a coarser precision.
  E0Element reduced(const Precision& coarser) const;
  // Reinterprets the stored residues at a finer precision. The extra digits
  // are zero, so this is only meaningful where the caller has bounded the
  // effect of the unknown digits.
  E0Element lifted(const Precision& finer) const;

  std::string to_string() const;

 private:
  friend class E0Accumulator;
  void normalize();

  Precision prec_;
  std::vector<BigInt> coeffs_;
};

// Sum of products without intermediate reductions; finish() reduces once.
class E0Accumulator {
 public:
  explicit E0Accumulator(const Precision& prec);

  void add(const E0Element& a);
  void sub(const E0Element& a);
  void add_product(const E0Element& a, const E0Element& b);
  void sub_product(const E0Element& a, const E0Element& b);
  void add_scaled(const BigInt& c, const E0Element& a);

  E0Element finish() const;

 private:
  void check(const E0Element& a) const;

  Precision prec_;
  std::vector<BigInt> acc_;
};

}  // namespace jh
