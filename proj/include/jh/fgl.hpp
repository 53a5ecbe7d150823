#pragma once

// Height-2 p-typical formal group law with Araki generators.
//
// Two independent constructions live here:
//
//  * an exact tier over Q[v1, v2] (GradedSeries, FormalGroup): logarithm,
//    exponential, formal sums, [p](x), [-1](x), h(x). Everything is exact
//    rational arithmetic, so it is meant for small x-truncations.
//
//  * a specialized tier that solves log(x r(y)) = x T(y), y = x^{p-1},
//    degree by degree in (Z/p^W)[u1]/(u1^Tu) with v2 = 1. This is what the
//    Weierstrass pipeline consumes; it reaches the truncations needed there.
//
// Weights: wt(v1) = p-1, wt(v2) = p^2-1, and x has weight -1, so every series
// built from x carries coefficient weight m - 1 at x^m (weight offset -1).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jh/arith.hpp"

namespace jh::fgl {

using Rational = mpq_class;

struct Monomial {
  int v1 = 0;
  int v2 = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

int monomial_weight(int prime, Monomial m);

// v2-exponent b of the monomial u1^a inside an element of the given weight,
// i.e. a(p-1) + b(p^2-1) = weight; nullopt if no integer b exists.
std::optional<int> v2_exponent(int prime, int weight, int u1_exp);

// Homogeneous polynomial in v1, v2 with rational coefficients.
class WeightedPoly {
 public:
  WeightedPoly(int prime, int weight);
  static WeightedPoly constant(int prime, const Rational& c);
  static WeightedPoly term(int prime, const Rational& c, Monomial m);

  int prime() const { return prime_; }
  int weight() const { return weight_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(Monomial m) const;
  bool is_zero() const { return terms_.empty(); }

  // HomogeneityViolation if m does not have this polynomial's weight.
  void add_term(Monomial m, const Rational& c);

  WeightedPoly operator-() const;
  friend WeightedPoly operator+(const WeightedPoly& a, const WeightedPoly& b);
  friend WeightedPoly operator-(const WeightedPoly& a, const WeightedPoly& b);
  friend WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b);
  friend WeightedPoly operator*(const Rational& c, const WeightedPoly& a);
  bool operator==(const WeightedPoly& o) const {
    return prime_ == o.prime_ && terms_ == o.terms_ && (is_zero() || weight_ == o.weight_);
  }

  // Largest exponent e such that p^e divides some coefficient's denominator.
  int p_denominator_exponent() const;
  bool is_p_integral() const { return p_denominator_exponent() == 0; }

  std::string to_string() const;

 private:
  int prime_;
  int weight_;
  std::map<Monomial, Rational> terms_;
};

// Power series in x truncated after x^x_trunc; the coefficient of x^m is
// homogeneous of weight m + weight_offset.
class GradedSeries {
 public:
  GradedSeries(int prime, int x_trunc, int weight_offset = -1);
  static GradedSeries monomial(const WeightedPoly& c, int m, int x_trunc);
  // The series x.
  static GradedSeries variable(int prime, int x_trunc);

  int prime() const { return prime_; }
  int x_trunc() const { return x_trunc_; }
  int weight_offset() const { return weight_offset_; }
  const WeightedPoly& coefficient(int m) const;
  void set_coefficient(int m, WeightedPoly c);
  // Lowest m with a nonzero coefficient; nullopt for the zero series.
  std::optional<int> order() const;
  bool is_zero() const { return !order().has_value(); }

  GradedSeries operator-() const;
  friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator*(const WeightedPoly& c, const GradedSeries& a);
  GradedSeries pow(unsigned long n) const;
  GradedSeries truncated(int x_trunc) const;
  bool operator==(const GradedSeries& o) const;

  bool is_p_integral() const;

 private:
  int prime_;
  int x_trunc_;
  int weight_offset_;
  std::vector<WeightedPoly> coeffs_;
};

// Logarithm coefficients l_0 = 1, l_1, ..., l_depth; l_i multiplies x^{p^i}.
struct ArakiLog {
  int prime;
  std::vector<WeightedPoly> l;
  int depth() const { return static_cast<int>(l.size()) - 1; }
};

// Solves p*l_n = sum_{i<=n} l_i v_{n-i}^{p^i} (v_0 = p, v_m = 0 for m > 2).
ArakiLog araki_log(int prime, int depth);

// Smallest depth whose logarithm is exact through x^x_trunc.
int log_depth_for(int prime, int x_trunc);

GradedSeries log_series(const ArakiLog& log, int x_trunc);
// log(a) = sum_i l_i a^{p^i}; a must have zero constant term.
GradedSeries apply_log(const ArakiLog& log, const GradedSeries& a);
// Compositional inverse of the logarithm.
GradedSeries exp_series(const ArakiLog& log, int x_trunc);
// outer(inner), inner with zero constant term.
GradedSeries compose(const GradedSeries& outer, const GradedSeries& inner);

// exp(log a + log b); IntegralityViolation if a p-power denominator survives.
GradedSeries formal_sum(const ArakiLog& log, const GradedSeries& a,
                        const GradedSeries& b, int x_trunc);

// px +_F v1 x^p +_F v2 x^{p^2} as two nested formal sums.
GradedSeries p_series(const ArakiLog& log, int x_trunc);
// exp(p log x), the second construction of [p](x).
GradedSeries p_series_from_log(const ArakiLog& log, int x_trunc);
// (px + v1 x^p) +_F v2 x^{p^2}.
GradedSeries h_series(const ArakiLog& log, int x_trunc);
// [-1](x) = exp(-log x).
GradedSeries negation_series(const ArakiLog& log, int x_trunc);

// Reusable logarithm/exponential pair at a fixed truncation.
class FormalGroup {
 public:
  FormalGroup(int prime, int x_trunc);

  int prime() const { return log_.prime; }
  int x_trunc() const { return x_trunc_; }
  const ArakiLog& log() const { return log_; }
  const GradedSeries& exp() const { return exp_; }

  GradedSeries sum(const GradedSeries& a, const GradedSeries& b) const;
  GradedSeries p_series() const;
  GradedSeries p_series_from_log() const;
  GradedSeries h_series() const;
  GradedSeries negation() const;

 private:
  int x_trunc_;
  ArakiLog log_;
  GradedSeries exp_;
};

// A series after v2 -> 1, v1 -> u1, coefficients reduced into E_2^0. The
// v2-exponent of the u1^a monomial at x^m is v2_exponent(p, m + offset, a).
struct SpecializedSeries {
  Precision precision;
  int weight_offset = -1;
  std::vector<E0Element> coefficients;  // index = x-exponent, 0..x_trunc
  int x_trunc() const { return static_cast<int>(coefficients.size()) - 1; }
};

SpecializedSeries specialize_v2(const GradedSeries& s, const Precision& prec);

enum class PSeriesRoute { scaled_log, iterated_sum };

// [p](x) after v2 -> 1 at the given precision through x^x_trunc, computed by
// the specialized tier.
SpecializedSeries p_series_specialized(const Precision& prec, int x_trunc,
                                       PSeriesRoute route = PSeriesRoute::scaled_log);
SpecializedSeries h_series_specialized(const Precision& prec, int x_trunc);

}  // namespace jh::fgl
