#include "jh/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "jh/fgl.hpp"
#include "jh/mono.hpp"
#include "jh/sigmap.hpp"
#include "jh/symm.hpp"

namespace jh::selfcheck {

E0Element random_element(const Precision& prec, gmp_randclass& rng) {
  std::vector<BigInt> c;
  for (int t = 0; t < prec.u_prec(); ++t) c.push_back(rng.get_z_range(prec.modulus()));
  return E0Element::from_coefficients(prec, std::move(c));
}

E0Element random_unit(const Precision& prec, gmp_randclass& rng) {
  for (;;) {
    E0Element u = random_element(prec, rng);
    if (u.is_unit()) return u;
  }
}

namespace {

class Recorder {
 public:
  explicit Recorder(std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) result_.failures.push_back(what);
  }

  // Runs body, recording any library error as a failure.
  void guarded(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      ++result_.checks;
      result_.failures.push_back(what + ": " + e.what());
    }
  }

  SuiteResult finish() {
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  std::chrono::steady_clock::time_point start_;
  SuiteResult result_;
};

Precision base_precision(const Options& o) { return Precision(o.prime, o.p_prec, o.u_prec); }

}  // namespace

SuiteResult arith_suite(const Options& o) {
  Recorder r("arith");
  r.guarded("arith", [&] {
    const Precision prec = base_precision(o);
    const int p = o.prime;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(o.seed);
    const E0Element one = E0Element::constant(prec, 1);
    const E0Element u1 = E0Element::monomial(prec, 1, 1);
    for (int n = 0; n < o.trials; ++n) {
      const E0Element a = random_element(prec, rng);
      const E0Element b = random_element(prec, rng);
      const E0Element c = random_element(prec, rng);
      r.check((a + b) + c == a + (b + c), "addition is associative");
      r.check(a * (b + c) == a * b + a * c, "multiplication distributes");
      r.check(a * b == b * a, "multiplication commutes");
      r.check(a - a == E0Element(prec), "a - a = 0");
      const E0Element u = random_unit(prec, rng);
      r.check(u * u.inverse() == one, "u * u^-1 = 1");
      r.check((BigInt(p) * a).divide_exact(Divisor::p, 1) ==
                  a.reduced(prec.with_p_prec(prec.p_prec() - 1)),
              "(p a) / p = a");
      r.check((u1 * a).divide_exact(Divisor::u1, 1) ==
                  a.reduced(prec.with_u_prec(prec.u_prec() - 1)),
              "(u1 a) / u1 = a");
    }
    bool threw = false;
    try {
      u1.inverse();
    } catch (const NotAUnit&) {
      threw = true;
    }
    r.check(threw, "u1 is not invertible");
  });
  return r.finish();
}

SuiteResult fgl_suite(const Options& o) {
  Recorder r("fgl");
  r.guarded("fgl", [&] {
    const int p = o.prime;
    const int n = p * p + 4 * (p - 1);
    const fgl::FormalGroup fg(p, n);
    const fgl::GradedSeries ps = fg.p_series();
    const fgl::GradedSeries h = fg.h_series();

    r.check(fg.negation() == -fgl::GradedSeries::variable(p, n), "[-1](x) = -x");
    r.check(ps == fg.p_series_from_log(), "iterated formal sums agree with exp(p log x)");
    r.check(ps.is_p_integral() && h.is_p_integral(), "[p](x) and h(x) are p-integral");
    for (int m = 0; m <= n; ++m) {
      const bool allowed = m >= 1 && (m - 1) % (p - 1) == 0;
      r.check(allowed || ps.coefficient(m).is_zero(),
              "[p](x) vanishes at x^" + std::to_string(m));
      r.check(ps.coefficient(m).is_zero() || ps.coefficient(m).weight() == m - 1,
              "coefficient of x^" + std::to_string(m) + " has weight m - 1");
    }

    // mod (p, v1) the series starts with v2 x^{p^2}
    auto is_zero_mod_p_v1 = [&](const fgl::WeightedPoly& c) {
      for (const auto& [mon, q] : c.terms()) {
        const BigInt num = q.get_num();
        if (mon.v1 == 0 && num % p != 0) return false;
      }
      return true;
    };
    for (int m = 0; m < p * p; ++m)
      r.check(is_zero_mod_p_v1(ps.coefficient(m)), "[p](x) = 0 mod (p, v1) below x^{p^2}");
    const mpq_class lead = ps.coefficient(p * p).coefficient(fgl::Monomial{0, 1});
    r.check(lead.get_den() % p != 0 && (lead.get_num() - lead.get_den()) % p == 0,
            "[p](x) = v2 x^{p^2} mod (p, v1)");

    // h(x) = [p](x) mod (p v1)
    const fgl::GradedSeries diff = ps - h;
    for (int m = 0; m <= n; ++m)
      for (const auto& [mon, q] : diff.coefficient(m).terms())
        r.check(mon.v1 >= 1 && q.get_num() % p == 0,
                "h(x) = [p](x) mod (p v1) at x^" + std::to_string(m));

    // Specialized tier against the exact tier.
    const Precision prec = base_precision(o);
    const fgl::SpecializedSeries exact = fgl::specialize_v2(ps, prec);
    const fgl::SpecializedSeries fast = fgl::p_series_specialized(prec, n);
    const fgl::SpecializedSeries iter =
        fgl::p_series_specialized(prec, n, fgl::PSeriesRoute::iterated_sum);
    const fgl::SpecializedSeries hx = fgl::specialize_v2(h, prec);
    const fgl::SpecializedSeries hf = fgl::h_series_specialized(prec, n);
    for (int m = 0; m <= n; ++m) {
      const auto i = static_cast<std::size_t>(m);
      r.check(exact.coefficients[i] == fast.coefficients[i],
              "specialized [p](x) matches the exact tier at x^" + std::to_string(m));
      r.check(iter.coefficients[i] == fast.coefficients[i],
              "both specialized routes agree at x^" + std::to_string(m));
      r.check(hx.coefficients[i] == hf.coefficients[i],
              "specialized h(x) matches the exact tier at x^" + std::to_string(m));
    }
  });
  return r.finish();
}

SuiteResult sigmap_suite(const Options& o) {
  Recorder r("sigmap");
  r.guarded("sigmap", [&] {
    const Precision prec = base_precision(o);
    const int p = o.prime;
    const int d = p + 1;
    const sigmap::WeierstrassPoly w = sigmap::weierstrass_of_p_series(prec);
    r.guarded("valuation pattern", [&] {
      sigmap::valuation_report(w);
      r.check(true, "valuation pattern");
    });

    // q0 * U = q
    const sigmap::QSeries q = sigmap::extract_q(fgl::p_series_specialized(prec, w.x_trunc));
    const std::vector<E0Element> f = w.ascending();
    const auto& u = w.unit_cofactor.q;
    bool factor_ok = true;
    for (int m = 0; m < q.y_trunc(); ++m) {
      E0Accumulator acc(prec);
      for (int a = 0; a <= d && a <= m; ++a)
        if (m - a < static_cast<int>(u.size()))
          acc.add_product(f[static_cast<std::size_t>(a)], u[static_cast<std::size_t>(m - a)]);
      factor_ok = factor_ok && acc.finish() == q.q[static_cast<std::size_t>(m)];
    }
    r.check(factor_ok, "q0 * U = q through the truncation");
    r.check(u.front().is_unit(), "the cofactor U is a unit");

    // Weierstrass factor of h is y^{p+1} + u1 y + p.
    const sigmap::WeierstrassPoly wh = sigmap::weierstrass_of_h_series(prec);
    for (int i = 1; i <= d; ++i) {
      E0Element expected(prec);
      if (i == p) expected = E0Element::monomial(prec, 1, 1);
      if (i == d) expected = E0Element::constant(prec, p);
      r.check(wh.coefficient(i) == expected, "h: c_" + std::to_string(i));
    }

    bool threw = false;
    try {
      sigmap::QSeries unit{{E0Element::constant(prec, 1), E0Element(prec)}, true};
      sigmap::weierstrass_prep(unit);
    } catch (const WrongWeierstrassDegree&) {
      threw = true;
    }
    r.check(threw, "a unit series has the wrong Weierstrass degree");
  });
  return r.finish();
}

SuiteResult symm_suite(const Options& o) {
  Recorder r("symm");
  r.guarded("symm", [&] {
    const Precision prec = base_precision(o);
    const int p = o.prime;
    const int k_max = 3 * (p + 1);
    const sigmap::WeierstrassPoly w = sigmap::weierstrass_of_p_series(prec);
    const symm::Elementary e = symm::elementary_from_weierstrass(w);
    const symm::PowerSumTable newton = symm::power_sums_newton(e, k_max);
    const symm::PowerSumTable trace = symm::power_sums_trace(w, k_max);
    const symm::PowerSumTable multi =
        symm::power_sums_multinomial(e, std::min(k_max, symm::kMultinomialCap));
    r.check(newton.at(0) == E0Element::constant(prec, p + 1), "s_0 = p + 1");
    r.check(trace.at(0) == newton.at(0), "trace of the identity is p + 1");
    for (int k = 1; k <= k_max; ++k) {
      const std::string sk = "s_" + std::to_string(k);
      r.check(newton.at(k) == trace.at(k), sk + ": Newton = trace");
      if (k <= multi.bound()) r.check(newton.at(k) == multi.at(k), sk + ": Newton = multinomial");
      r.check(newton.at(k).p_valuation() >= Valuation(1), sk + " is divisible by p");
      const auto coeffs = newton.at(k).coefficients();
      for (std::size_t t = 0; t < coeffs.size(); ++t)
        if (coeffs[t] != 0)
          r.check((k + static_cast<int>(t)) % (p + 1) == 0, sk + " is homogeneous");
    }

    for (long s = 0; s <= 100; ++s)
      for (long k = 0; k <= s; ++k) {
        BigInt c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(k));
        r.check(Valuation(symm::nu_p_binomial(p, s, k)) == p_valuation(c, p),
                "Kummer carries match the binomial coefficient");
      }
    for (long s = 1; s <= 500; ++s) {
      long floor_log = 0;
      for (long q = p; q <= s; q *= p) ++floor_log;
      for (long k = 0; k <= s; ++k)
        if (symm::nu_p_binomial(p, s, k) > floor_log) {
          r.check(false, "nu_p(C(" + std::to_string(s) + "," + std::to_string(k) + ")) <= log_p s");
        }
    }
    r.check(true, "binomial valuation bound");

    const symm::TermBreakdown t10 = symm::term_breakdown(p, 1, 0);
    r.check(t10.k == p + 1 && t10.scalar == p + 1 && t10.scalar_valuation == 0,
            "term (1, 0) is (p + 1) with valuation 0");
  });
  return r.finish();
}

SuiteResult mono_suite(const Options& o) {
  Recorder r("mono");
  r.guarded("mono", [&] {
    const int p = o.prime;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(o.seed);
    const std::vector<std::pair<int, int>> grid{{0, 1}, {0, 2}, {0, 3}, {1, p}, {1, 2 * p}, {2, p * p}};
    for (const auto& [i, j] : grid) {
      const std::string name = "(i,j) = (" + std::to_string(i) + "," + std::to_string(j) + ")";
      r.guarded(name, [&] {
        const mono::DetectionReport rep = mono::hopf_invariant(p, i, j, j);
        r.check(rep.filtration == p * j + i + 1, name + ": filtration pj + i + 1");
        r.check(rep.detector_v2 == 0 && rep.detector_v1 == i + 1, name + ": detector");
        r.check(rep.value.support() == std::vector<mono::MElement::Key>{{1, i + 1}},
                name + ": value is unit / (p v1^{i+1})");
        r.check(rep.zero_above && rep.scan_hi == rep.filtration + 2 * p, name + ": zero above");
        r.check(rep.degree_consistent(), name + ": degree consistency");
        for (int n = 0; n < o.trials; ++n) {
          r.check(mono::unit_invariance_check(rep, random_unit(rep.certified, rng)),
                  name + ": unit invariance");
          const BigInt c = random_unit(rep.certified, rng).coefficient(0);
          r.check(mono::unit_invariance(rep, E0Element::constant(rep.certified, c)).full_support,
                  name + ": constant units keep the whole support");
        }
      });
    }

    const Precision prec = base_precision(o);
    const sigmap::WeierstrassPoly w = sigmap::weierstrass_of_p_series(prec);
    const symm::PowerSumTable table =
        symm::power_sums_newton(symm::elementary_from_weierstrass(w), 2 * p + 2);
    const mono::GramPattern g = mono::gram_pattern(mono::trace_form_gram(w, table), p);
    r.check(g.antidiagonal_units, "Gram antidiagonal entries are units");
    r.check(g.above_in_maximal_ideal, "Gram entries above the antidiagonal lie in (p, u1)");

    const mono::JHImage first = mono::jh_image(table, 1);
    r.check(first.value.u1_valuation() >= Valuation(1), "jh*(y) lies in u1 E0");
    r.check(BigInt(mono::jh_image(table, p + 1).value.coefficient(0)) % p != 0,
            "jh*(y^{p+1}) has unit constant term");

    const mono::MonoClass mu = mono::MonoClass::from_ijk(1, 3, 3);
    const Precision pp = mono::jh_image(table, 1).certified;
    for (int n = 0; n < o.trials; ++n) {
      const E0Element a = random_element(pp, rng);
      const E0Element b = random_element(pp, rng);
      r.check(mono::pair(mu, a + b) == mono::pair(mu, a) + mono::pair(mu, b),
              "pairing is additive");
    }
  });
  return r.finish();
}

std::vector<SuiteResult> run_all(const Options& o) {
  return {arith_suite(o), fgl_suite(o), sigmap_suite(o), symm_suite(o), mono_suite(o)};
}

}  // namespace jh::selfcheck
