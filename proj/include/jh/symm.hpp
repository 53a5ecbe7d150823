#pragma once

// Power sums of the roots of q0 by three independent routes (Newton's
// recurrence, the multinomial closed form, traces of companion-matrix powers)
// and the exact p-adic bookkeeping on factorials and binomials used to analyse
// individual terms.

#include <string>
#include <vector>

#include "jh/arith.hpp"
#include "jh/sigmap.hpp"

namespace jh::symm {

enum class PowerSumMethod { newton, multinomial, trace };

std::string to_string(PowerSumMethod m);

// e[0] = 1, e[i] = i-th elementary symmetric function of the roots.
struct Elementary {
  std::vector<E0Element> e;
  int degree() const { return static_cast<int>(e.size()) - 1; }
};

// s[0] = number of roots (p+1 for q0); s[k] for k = 1..K. The u1^t monomial of
// s_k carries v2^{-(k+t)/(p+1)}; see power_sum_weight.
struct PowerSumTable {
  PowerSumMethod method = PowerSumMethod::newton;
  std::vector<E0Element> s;

  int bound() const { return static_cast<int>(s.size()) - 1; }
  const E0Element& at(int k) const { return s.at(static_cast<std::size_t>(k)); }
};

// Weight of s_k: roots of q0 have weight -(p-1).
inline int power_sum_weight(int prime, int k) { return -k * (prime - 1); }

// e_i = (-1)^i c_i.
Elementary elementary_from_weierstrass(const sigmap::WeierstrassPoly& w);
// Elementary symmetric functions of a monic polynomial given in ascending order
// (last coefficient 1).
Elementary elementary_from_monic(const std::vector<E0Element>& ascending);

PowerSumTable power_sums_newton(const Elementary& e, int bound);

inline constexpr int kMultinomialCap = 40;
// Sum over multiplicity vectors r with sum i r_i = k of
// k (sum r_i - 1)! / prod r_i! * prod (-c_i)^{r_i}, c_i = (-1)^i e_i the
// coefficients of the monic polynomial. Bounds above `cap` are
// rejected (std::invalid_argument); the enumeration is a cross-check only.
PowerSumTable power_sums_multinomial(const Elementary& e, int bound, int cap = kMultinomialCap);

// s_k = tr(C^k) for the companion matrix C of the monic polynomial.
PowerSumTable power_sums_trace(const sigmap::WeierstrassPoly& w, int bound);
PowerSumTable power_sums_trace(const std::vector<E0Element>& ascending, int bound);

// Legendre: nu_p(n!) = sum_{i>=1} floor(n / p^i).
long factorial_valuation(long p, long n);
// nu_p(C(s, r)) as the number of carries when adding r and s - r in base p.
int nu_p_binomial(long p, long s, long r);

// The term (1/p) * k(s+t-1)!/(s!t!) * p^s v1^t contributing to s_k with
// k = (p+1)s + pt.
struct TermBreakdown {
  int prime = 0;
  int s = 0;
  int t = 0;
  long k = 0;
  BigInt scalar;          // k (s+t-1)! / (s! t!)
  int scalar_valuation = 0;
  // p-adic valuation of (1/p) * scalar * p^s, the p-power of the contribution.
  int contribution_p_valuation = 0;
};

TermBreakdown term_breakdown(int prime, int s, int t);

}  // namespace jh::symm
