#include "jh/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iomanip>
#include <sstream>

#include "jh/fgl.hpp"
#include "jh/mono.hpp"
#include "jh/render.hpp"
#include "jh/selfcheck.hpp"
#include "jh/sigmap.hpp"
#include "jh/symm.hpp"

namespace jh::cli {

namespace {

using render::Json;

struct Config {
  int prime = 0;
  int p_prec = 0;  // 0: command default
  int u_prec = 0;
  int x_trunc = 0;
  int window = -1;
  bool json = false;
  int i = -1;
  int j = -1;
  int v2 = -1;
  int k_max = 0;
  bool inject_fault = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Precision default_precision(const Config& c) {
  return Precision(c.prime, c.p_prec > 0 ? c.p_prec : 4, c.u_prec > 0 ? c.u_prec : 4);
}

Json header(const Config& c, const std::string& command) {
  return Json{{"command", command}, {"prime", c.prime}};
}

int cmd_pseries(const Config& c, std::ostream& out) {
  const Precision prec = default_precision(c);
  const int p = c.prime;
  const int n = c.x_trunc > 0 ? c.x_trunc : 2 * (p + 1) * (p - 1) + 1;
  const fgl::SpecializedSeries s = fgl::p_series_specialized(prec, n);

  Json j = header(c, "pseries");
  j["precision"] = render::precision_json(prec);
  j["x_trunc"] = n;
  j["rows"] = Json::array();
  std::vector<std::vector<std::string>> rows{{"m", "coefficient of x^m"}};
  for (int m = 0; m <= n; ++m) {
    const E0Element& x = s.coefficients[static_cast<std::size_t>(m)];
    if (x.is_zero()) continue;
    const std::string text = render::graded_string(x, m - 1);
    j["rows"].push_back(Json{{"m", m}, {"terms", render::graded_json(x, m - 1)}, {"text", text}});
    rows.push_back({std::to_string(m), text});
  }
  if (c.json) {
    out << render::dump(j);
  } else {
    out << "[p](x) at p = " << p << ", precision " << prec.to_string() << ", through x^" << n
        << "\n"
        << render::table(rows);
  }
  return ok;
}

int cmd_qpoly(const Config& c, std::ostream& out) {
  const Precision prec = default_precision(c);
  const int p = c.prime;
  sigmap::WeierstrassPoly w = sigmap::weierstrass_of_p_series(prec, c.x_trunc);
  if (c.inject_fault) w.c.back() += E0Element::constant(prec, 1);

  Json j = header(c, "qpoly");
  j["precision"] = render::precision_json(prec);
  j["x_trunc"] = w.x_trunc;
  j["iterations"] = w.iterations;
  j["c"] = Json::array();
  std::vector<std::string> texts;
  for (int i = 1; i <= p + 1; ++i) {
    texts.push_back(render::graded_string(w.coefficient(i), -i * (p - 1)));
    j["c"].push_back(texts.back());
  }

  const sigmap::ValuationReport report = sigmap::valuation_report(w);
  j["valuations"] = Json::array();
  std::vector<std::vector<std::string>> rows{{"i", "c_i", "nu_p", "nu_u1", "pattern"}};
  for (const auto& row : report.rows) {
    j["valuations"].push_back(Json{{"index", row.index},
                                   {"p", render::valuation_json(row.p_val)},
                                   {"u1", render::valuation_json(row.u1_val)},
                                   {"unit_after_division", row.unit_after_division}});
    std::string pattern = "in (p u1)";
    if (row.index == p + 1) pattern = "p * unit";
    if (row.index == p) pattern = "u1 * unit";
    rows.push_back({std::to_string(row.index), texts[static_cast<std::size_t>(row.index - 1)],
                    row.p_val.to_string(), row.u1_val.to_string(), pattern});
  }
  if (c.json) {
    out << render::dump(j);
  } else {
    out << "q0(y) = y^" << p + 1 << " + c_1 y^" << p << " + ... + c_" << p + 1 << " at p = " << p
        << ", precision " << prec.to_string() << "\n"
        << render::table(rows);
  }
  return ok;
}

struct PowerSums {
  sigmap::WeierstrassPoly w;
  symm::PowerSumTable newton;
};

PowerSums power_sums(const Config& c, int k_max) {
  const Precision prec = default_precision(c);
  sigmap::WeierstrassPoly w = sigmap::weierstrass_of_p_series(prec, c.x_trunc);
  symm::PowerSumTable t = symm::power_sums_newton(symm::elementary_from_weierstrass(w), k_max);
  return {std::move(w), std::move(t)};
}

int default_k_max(const Config& c) { return c.k_max > 0 ? c.k_max : 2 * c.prime + 2; }

int cmd_powersums(const Config& c, std::ostream& out) {
  const int p = c.prime;
  const int k_max = default_k_max(c);
  const PowerSums ps = power_sums(c, k_max);
  const symm::PowerSumTable trace = symm::power_sums_trace(ps.w, k_max);
  const int multi_bound = std::min(k_max, symm::kMultinomialCap);
  const symm::PowerSumTable multi =
      symm::power_sums_multinomial(symm::elementary_from_weierstrass(ps.w), multi_bound);

  Json j = header(c, "powersums");
  j["precision"] = render::precision_json(ps.w.certified);
  j["k_max"] = k_max;
  j["rows"] = Json::array();
  std::vector<std::vector<std::string>> rows{{"k", "s_k", "methods"}};
  for (int k = 1; k <= k_max; ++k) {
    const E0Element& s = ps.newton.at(k);
    if (!(trace.at(k) == s))
      throw InvariantViolation("s_" + std::to_string(k) + ": Newton and trace disagree");
    Json methods = Json::array({"newton", "trace"});
    if (k <= multi_bound) {
      if (!(multi.at(k) == s))
        throw InvariantViolation("s_" + std::to_string(k) + ": Newton and multinomial disagree");
      methods.push_back("multinomial");
    }
    const int weight = symm::power_sum_weight(p, k);
    const std::string text = render::graded_string(s, weight);
    j["rows"].push_back(Json{{"k", k},
                             {"terms", render::graded_json(s, weight)},
                             {"text", text},
                             {"methods", methods}});
    std::string agreed;
    for (const auto& m : methods) agreed += (agreed.empty() ? "" : "=") + m.get<std::string>();
    rows.push_back({std::to_string(k), text, agreed});
  }
  if (c.json) {
    out << render::dump(j);
  } else {
    out << "power sums of the roots of q0 at p = " << p << "\n" << render::table(rows);
  }
  return ok;
}

int cmd_jh(const Config& c, std::ostream& out) {
  const int p = c.prime;
  const int k_max = default_k_max(c);
  const PowerSums ps = power_sums(c, k_max);

  Json j = header(c, "jh");
  j["rows"] = Json::array();
  std::vector<std::vector<std::string>> rows{{"k", "jh*(y^k) = s_k/p", "nu_p", "nu_u1"}};
  const std::vector<mono::JHImage> images = mono::jh_images(ps.newton, k_max);
  for (const mono::JHImage& im : images) {
    const std::string text = render::graded_string(im.value, im.weight);
    j["rows"].push_back(Json{{"k", im.k},
                             {"terms", render::graded_json(im.value, im.weight)},
                             {"text", text},
                             {"p_val", render::valuation_json(im.value.p_valuation())},
                             {"u1_val", render::valuation_json(im.value.u1_valuation())}});
    rows.push_back({std::to_string(im.k), text, im.value.p_valuation().to_string(),
                    im.value.u1_valuation().to_string()});
  }
  j["precision"] = render::precision_json(images.front().certified);
  if (c.json) {
    out << render::dump(j);
  } else {
    out << "James-Hopf images at p = " << p << ", certified precision "
        << images.front().certified.to_string() << "\n"
        << render::table(rows);
  }
  return ok;
}

int cmd_hopf(const Config& c, std::ostream& out) {
  if (c.i < 0 || c.j < 1) throw UsageError("hopf needs --i >= 0 and --j >= 1");
  const int v2 = c.v2 >= 0 ? c.v2 : c.j;
  mono::HopfOptions options;
  options.window = c.window;
  options.p_prec = c.p_prec;
  options.u_prec = c.u_prec;
  options.x_trunc = c.x_trunc;
  const mono::DetectionReport r = mono::hopf_invariant(c.prime, c.i, c.j, v2, options);

  Json j = header(c, "hopf");
  j["input"] = Json{{"v2", r.input.v2_pow}, {"p_exp", r.input.p_exp}, {"v1", r.input.v1_pow}};
  j["filtration"] = r.filtration;
  j["detector"] = Json{{"v2", r.detector_v2}, {"v1", r.detector_v1}};
  j["value"] = render::melement_json(r.value);
  j["precision"] = render::precision_json(r.precision);
  j["certified"] = render::precision_json(r.certified);
  j["x_trunc"] = r.x_trunc;
  j["zero_above"] = r.zero_above;
  j["exploratory"] = r.exploratory;
  j["scan"] = Json{{"lo", r.scan_lo}, {"hi", r.scan_hi}};
  j["nonzero_k"] = r.nonzero_k;
  if (c.json) {
    out << render::dump(j);
    return ok;
  }
  std::vector<std::vector<std::string>> rows{
      {"class", r.input.to_string()},
      {"filtration", std::to_string(r.filtration)},
      {"detector", "v2^" + std::to_string(r.detector_v2) + "/v1^" + std::to_string(r.detector_v1)},
      {"value", r.value.to_string()},
      {"zero above", std::string(r.zero_above ? "yes" : "no") + " (k up to " +
                         std::to_string(r.scan_hi) + ")"},
      {"precision", r.precision.to_string() + ", certified " + r.certified.to_string()},
      {"x_trunc", std::to_string(r.x_trunc)}};
  if (r.exploratory)
    rows.push_back({"exploratory", "p^" + std::to_string(c.i) + " does not divide j"});
  out << render::table(rows);
  return ok;
}

int cmd_gram(const Config& c, std::ostream& out) {
  const int p = c.prime;
  const PowerSums ps = power_sums(c, 2 * p + 2);
  const mono::Gram g = mono::trace_form_gram(ps.w, ps.newton);
  const mono::GramPattern pattern = mono::gram_pattern(g, p);

  Json j = header(c, "gram");
  j["precision"] = render::precision_json(g.front().front().precision());
  j["entries"] = Json::array();
  std::vector<std::vector<std::string>> rows{{"a\\b"}};
  for (int b = 1; b <= p + 1; ++b) rows.front().push_back(std::to_string(b));
  for (int a = 0; a <= p; ++a) {
    Json row = Json::array();
    std::vector<std::string> line{std::to_string(a)};
    for (int b = 1; b <= p + 1; ++b) {
      const E0Element& x = g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b - 1)];
      const std::string text = render::graded_string(x, symm::power_sum_weight(p, a + b));
      row.push_back(Json{{"a", a}, {"b", b}, {"text", text}, {"unit", x.is_unit()}});
      line.push_back(text + (x.is_unit() ? " [unit]" : " [m]"));
    }
    j["entries"].push_back(row);
    rows.push_back(line);
  }
  j["antidiagonal_units"] = pattern.antidiagonal_units;
  j["above_in_maximal_ideal"] = pattern.above_in_maximal_ideal;
  if (c.json) {
    out << render::dump(j);
  } else {
    out << "trace form <x^a, x^b> = s_{a+b}/p at p = " << p << "\n"
        << render::table(rows) << "antidiagonal units: " << (pattern.antidiagonal_units ? "yes" : "no")
        << "\nabove antidiagonal in (p, u1): " << (pattern.above_in_maximal_ideal ? "yes" : "no")
        << "\n";
  }
  if (!pattern.ok()) throw InvariantViolation("trace form fails the perfectness pattern");
  return ok;
}

int cmd_selfcheck(const Config& c, std::ostream& out) {
  selfcheck::Options o;
  o.prime = c.prime;
  if (c.p_prec > 0) o.p_prec = c.p_prec;
  if (c.u_prec > 0) o.u_prec = c.u_prec;
  const auto results = selfcheck::run_all(o);
  bool all = true;
  Json j = header(c, "selfcheck");
  j["suites"] = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : results) {
    all = all && r.passed();
    j["suites"].push_back(Json{{"name", r.name},
                               {"passed", r.passed()},
                               {"checks", r.checks},
                               {"seconds", r.seconds},
                               {"failures", r.failures}});
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << r.seconds << " s";
    rows.push_back({r.passed() ? "PASS" : "FAIL", r.name, std::to_string(r.checks) + " checks",
                    secs.str()});
  }
  j["passed"] = all;
  if (c.json) {
    out << render::dump(j);
  } else {
    out << render::table(rows);
    for (const auto& r : results)
      for (const auto& f : r.failures) out << r.name << ": " << f << "\n";
  }
  return all ? ok : violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"James-Hopf invariants at height 2 from the p-series"};
  app.require_subcommand(1);
  Config c;

  using Command = std::function<int(const Config&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const std::string& name, const std::string& help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--prime", c.prime, "odd prime")->required();
    sub->add_option("--p-prec", c.p_prec, "p-adic precision");
    sub->add_option("--u-prec", c.u_prec, "u1-adic precision");
    sub->add_option("--x-trunc", c.x_trunc, "x-truncation (0 = automatic)");
    sub->add_flag("--json", c.json, "machine-readable output");
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };
  CLI::App* qpoly = add("qpoly", "Weierstrass factor q0 and its valuations", cmd_qpoly);
  qpoly->add_flag("--inject-fault", c.inject_fault)->group("");
  add("pseries", "coefficients of [p](x)", cmd_pseries);
  add("powersums", "power sums of the roots of q0", cmd_powersums)
      ->add_option("--k-max", c.k_max, "largest k");
  add("jh", "James-Hopf images s_k/p", cmd_jh)->add_option("--k-max", c.k_max, "largest k");
  CLI::App* hopf = add("hopf", "Hopf invariant of v2^k/(p^{i+1} v1^j)", cmd_hopf);
  hopf->add_option("--i", c.i, "p-exponent minus one")->required();
  hopf->add_option("--j", c.j, "v1-exponent")->required();
  hopf->add_option("--v2", c.v2, "v2-exponent (default j)");
  hopf->add_option("--window", c.window, "scan width above pj+i+1 (default 2p)");
  add("gram", "trace form Gram matrix", cmd_gram);
  add("selfcheck", "run all invariant suites", cmd_selfcheck);

  std::vector<std::string> argv_store{"jhcalc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (!is_prime(c.prime) || c.prime == 2)
      throw UsageError("--prime must be an odd prime, got " + std::to_string(c.prime));
    for (const auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(c, out);
    throw UsageError("no subcommand");
  } catch (const PatternViolation& e) {
    err << "PatternViolation at c_" << e.index() << ": " << e.what() << "\n";
    return violation;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return violation;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << "\n";
    return precision;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return violation;
  }
}

}  // namespace jh::cli
