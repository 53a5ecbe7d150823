#include "jh/render.hpp"

#include <algorithm>
#include <sstream>

#include "jh/fgl.hpp"

namespace jh::render {

std::vector<Term> graded_terms(const E0Element& x, int weight) {
  const int p = x.precision().prime();
  std::vector<Term> out;
  const auto coeffs = x.coefficients();
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    if (coeffs[t] == 0) continue;
    const auto b = fgl::v2_exponent(p, weight, static_cast<int>(t));
    if (!b)
      throw HomogeneityViolation("u1^" + std::to_string(t) + " does not fit weight " +
                                 std::to_string(weight));
    Term term{coeffs[t], 0, static_cast<int>(t), *b};
    while (mpz_divisible_ui_p(term.coeff.get_mpz_t(), static_cast<unsigned long>(p))) {
      term.coeff /= p;
      ++term.p_exp;
    }
    out.push_back(std::move(term));
  }
  return out;
}

namespace {

std::string power(const std::string& base, int e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

std::string term_string(const Term& t) {
  std::vector<std::string> factors;
  if (t.coeff != 1) factors.push_back(t.coeff.get_str());
  if (t.p_exp != 0) factors.push_back(power("p", t.p_exp));
  if (t.v1 != 0) factors.push_back(power("v1", t.v1));
  if (t.v2 != 0) factors.push_back(power("v2", t.v2));
  if (factors.empty()) return "1";
  std::string s = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) s += "*" + factors[i];
  return s;
}

std::string graded_string(const E0Element& x, int weight) {
  const auto terms = graded_terms(x, weight);
  if (terms.empty()) return "0";
  std::string s = term_string(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) s += " + " + term_string(terms[i]);
  return s;
}

Json term_json(const Term& t) {
  return Json{{"coeff", t.coeff.get_str()}, {"p", t.p_exp}, {"v1", t.v1}, {"v2", t.v2}};
}

Json graded_json(const E0Element& x, int weight) {
  Json arr = Json::array();
  for (const Term& t : graded_terms(x, weight)) arr.push_back(term_json(t));
  return arr;
}

Json valuation_json(const Valuation& v) {
  if (v.is_infinite()) return nullptr;
  return v.value();
}

Json precision_json(const Precision& prec) {
  return Json{{"p", prec.p_prec()}, {"u1", prec.u_prec()}};
}

Json melement_json(const mono::MElement& m) {
  Json arr = Json::array();
  for (const auto& [key, c] : m.terms())
    arr.push_back(Json{{"p_den", key.first}, {"v1_den", key.second}, {"coeff", c.get_str()}});
  return arr;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << line << "\n";
  }
  return os.str();
}

}  // namespace jh::render
