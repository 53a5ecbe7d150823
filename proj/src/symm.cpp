#include "jh/symm.hpp"

#include <functional>
#include <stdexcept>

namespace jh::symm {

std::string to_string(PowerSumMethod m) {
  switch (m) {
    case PowerSumMethod::newton:
      return "newton";
    case PowerSumMethod::multinomial:
      return "multinomial";
    case PowerSumMethod::trace:
      return "trace";
  }
  return "?";
}

Elementary elementary_from_weierstrass(const sigmap::WeierstrassPoly& w) {
  Elementary out;
  out.e.push_back(E0Element::constant(w.certified, 1));
  for (int i = 1; i <= w.degree(); ++i)
    out.e.push_back(i % 2 == 0 ? w.coefficient(i) : -w.coefficient(i));
  return out;
}

Elementary elementary_from_monic(const std::vector<E0Element>& ascending) {
  if (ascending.size() < 2) throw std::invalid_argument("monic polynomial of degree >= 1 expected");
  const int d = static_cast<int>(ascending.size()) - 1;
  const Precision& prec = ascending.front().precision();
  if (!(ascending.back() == E0Element::constant(prec, 1)))
    throw std::invalid_argument("polynomial is not monic");
  Elementary out;
  out.e.push_back(E0Element::constant(prec, 1));
  for (int i = 1; i <= d; ++i) {
    const E0Element& c = ascending[static_cast<std::size_t>(d - i)];
    out.e.push_back(i % 2 == 0 ? c : -c);
  }
  return out;
}

PowerSumTable power_sums_newton(const Elementary& e, int bound) {
  if (bound < 1) throw std::invalid_argument("power sum bound must be >= 1");
  const int d = e.degree();
  const Precision& prec = e.e.front().precision();
  // With c_i = (-1)^i e_i: s_k = -(c_1 s_{k-1} + ... + c_{k-1} s_1 + k c_k),
  // and for k > d the last term drops out.
  std::vector<E0Element> c;
  c.push_back(E0Element::constant(prec, 1));
  for (int i = 1; i <= d; ++i) c.push_back(i % 2 == 0 ? e.e[static_cast<std::size_t>(i)] : -e.e[static_cast<std::size_t>(i)]);

  PowerSumTable table{PowerSumMethod::newton, {E0Element::constant(prec, d)}};
  for (int k = 1; k <= bound; ++k) {
    E0Accumulator acc(prec);
    for (int i = 1; i <= std::min(k - 1, d); ++i)
      acc.sub_product(c[static_cast<std::size_t>(i)], table.s[static_cast<std::size_t>(k - i)]);
    if (k <= d) acc.add_scaled(BigInt(-k), c[static_cast<std::size_t>(k)]);
    table.s.push_back(acc.finish());
  }
  return table;
}

PowerSumTable power_sums_multinomial(const Elementary& e, int bound, int cap) {
  if (bound < 1) throw std::invalid_argument("power sum bound must be >= 1");
  if (bound > cap)
    throw std::invalid_argument("multinomial enumeration is capped at k <= " + std::to_string(cap));
  const int d = e.degree();
  const Precision& prec = e.e.front().precision();

  // powers[i][r] = (-c_i)^r with c_i = (-1)^i e_i
  std::vector<std::vector<E0Element>> powers(static_cast<std::size_t>(d) + 1);
  for (int i = 1; i <= d; ++i) {
    auto& row = powers[static_cast<std::size_t>(i)];
    row.push_back(E0Element::constant(prec, 1));
    const E0Element& ei = e.e[static_cast<std::size_t>(i)];
    const E0Element neg = i % 2 == 0 ? -ei : ei;
    for (int r = 1; r * i <= bound; ++r) row.push_back(row.back() * neg);
  }

  PowerSumTable table{PowerSumMethod::multinomial, {E0Element::constant(prec, d)}};
  std::vector<int> r(static_cast<std::size_t>(d) + 1, 0);
  for (int k = 1; k <= bound; ++k) {
    E0Accumulator acc(prec);
    // Enumerate r_d, r_{d-1}, ..., r_1 with sum i r_i = k.
    std::function<void(int, int)> walk = [&](int i, int remaining) {
      if (i == 0) {
        if (remaining != 0) return;
        long total = 0;
        BigInt denom = 1;
        for (int j = 1; j <= d; ++j) {
          total += r[static_cast<std::size_t>(j)];
          BigInt f;
          mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(r[static_cast<std::size_t>(j)]));
          denom *= f;
        }
        BigInt num;
        mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(total - 1));
        num *= k;
        if (!mpz_divisible_p(num.get_mpz_t(), denom.get_mpz_t()))
          throw std::logic_error("multinomial coefficient is not integral");
        BigInt coeff;
        mpz_divexact(coeff.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
        E0Element term = E0Element::constant(prec, coeff);
        for (int j = 1; j <= d; ++j)
          if (r[static_cast<std::size_t>(j)] > 0)
            term = term * powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(r[static_cast<std::size_t>(j)])];
        acc.add(term);
        return;
      }
      // Vectors with r_i > 0 contribute nothing when e_i = 0.
      const int top = e.e[static_cast<std::size_t>(i)].is_zero() ? 0 : remaining / i;
      for (int ri = top; ri >= 0; --ri) {
        r[static_cast<std::size_t>(i)] = ri;
        walk(i - 1, remaining - ri * i);
      }
      r[static_cast<std::size_t>(i)] = 0;
    };
    walk(d, k);
    table.s.push_back(acc.finish());
  }
  return table;
}

PowerSumTable power_sums_trace(const std::vector<E0Element>& ascending, int bound) {
  if (bound < 1) throw std::invalid_argument("power sum bound must be >= 1");
  const int d = static_cast<int>(ascending.size()) - 1;
  if (d < 1) throw std::invalid_argument("monic polynomial of degree >= 1 expected");
  const Precision& prec = ascending.front().precision();

  // Companion matrix of multiplication by y on A[y]/f in the basis 1..y^{d-1}:
  // C[i][i-1] = 1, C[i][d-1] = -a_i. Right-multiplying X by C shifts columns
  // left and fills the last column with -sum_i X[r][i] a_i.
  using Matrix = std::vector<std::vector<E0Element>>;
  Matrix x(static_cast<std::size_t>(d), std::vector<E0Element>(static_cast<std::size_t>(d), E0Element(prec)));
  for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = E0Element::constant(prec, 1);

  PowerSumTable table{PowerSumMethod::trace, {}};
  auto trace = [&](const Matrix& m) {
    E0Accumulator acc(prec);
    for (int i = 0; i < d; ++i) acc.add(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
    return acc.finish();
  };
  table.s.push_back(trace(x));
  for (int k = 1; k <= bound; ++k) {
    Matrix next(static_cast<std::size_t>(d));
    for (int row = 0; row < d; ++row) {
      const auto& xr = x[static_cast<std::size_t>(row)];
      auto& nr = next[static_cast<std::size_t>(row)];
      nr.reserve(static_cast<std::size_t>(d));
      for (int col = 0; col + 1 < d; ++col) nr.push_back(xr[static_cast<std::size_t>(col + 1)]);
      E0Accumulator acc(prec);
      for (int i = 0; i < d; ++i)
        if (!xr[static_cast<std::size_t>(i)].is_zero())
          acc.sub_product(xr[static_cast<std::size_t>(i)], ascending[static_cast<std::size_t>(i)]);
      nr.push_back(acc.finish());
    }
    x = std::move(next);
    table.s.push_back(trace(x));
  }
  return table;
}

PowerSumTable power_sums_trace(const sigmap::WeierstrassPoly& w, int bound) {
  return power_sums_trace(w.ascending(), bound);
}

long factorial_valuation(long p, long n) {
  long v = 0;
  for (long q = n / p; q > 0; q /= p) v += q;
  return v;
}

int nu_p_binomial(long p, long s, long r) {
  if (r < 0 || r > s) throw std::invalid_argument("nu_p_binomial needs 0 <= r <= s");
  int carries = 0;
  int carry = 0;
  for (long a = r, b = s - r; a > 0 || b > 0 || carry > 0; a /= p, b /= p) {
    const long digit = a % p + b % p + carry;
    carry = digit >= p ? 1 : 0;
    carries += carry;
  }
  return carries;
}

TermBreakdown term_breakdown(int prime, int s, int t) {
  if (s < 0 || t < 0 || (s == 0 && t == 0))
    throw std::invalid_argument("term_breakdown needs (s,t) != (0,0), both nonnegative");
  TermBreakdown out;
  out.prime = prime;
  out.s = s;
  out.t = t;
  out.k = static_cast<long>(prime + 1) * s + static_cast<long>(prime) * t;
  BigInt num, fs, ft;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(s + t - 1));
  num *= out.k;
  mpz_fac_ui(fs.get_mpz_t(), static_cast<unsigned long>(s));
  mpz_fac_ui(ft.get_mpz_t(), static_cast<unsigned long>(t));
  const BigInt denom = fs * ft;
  if (!mpz_divisible_p(num.get_mpz_t(), denom.get_mpz_t()))
    throw std::logic_error("k (s+t-1)!/(s!t!) is not an integer");
  mpz_divexact(out.scalar.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());

  long v = 0;
  for (long k = out.k; k % prime == 0; k /= prime) ++v;
  v += factorial_valuation(prime, s + t - 1) - factorial_valuation(prime, s) -
       factorial_valuation(prime, t);
  out.scalar_valuation = static_cast<int>(v);
  out.contribution_p_valuation = out.scalar_valuation + s - 1;
  return out;
}

}  // namespace jh::symm
