#pragma once

// Text and JSON rendering. E0 elements are printed back in graded form: the
// u1^t monomial of an element of weight w becomes coeff * p^a * v1^t * v2^b
// with p not dividing coeff and t(p-1) + b(p^2-1) = w.

#include <string>
#include <vector>

#include <json.hpp>

#include "jh/arith.hpp"
#include "jh/mono.hpp"

namespace jh::render {

using Json = nlohmann::json;

struct Term {
  BigInt coeff;  // prime to p
  int p_exp = 0;
  int v1 = 0;
  int v2 = 0;
};

// HomogeneityViolation if some monomial has no integral v2-exponent.
std::vector<Term> graded_terms(const E0Element& x, int weight);
std::string term_string(const Term& t);
std::string graded_string(const E0Element& x, int weight);

Json term_json(const Term& t);
Json graded_json(const E0Element& x, int weight);
// Integer or null for infinity.
Json valuation_json(const Valuation& v);
Json precision_json(const Precision& prec);
// [{"p_den": alpha, "v1_den": beta, "coeff": "c"}, ...]
Json melement_json(const mono::MElement& m);

// Canonical text: keys sorted, two-space indent, trailing newline.
std::string dump(const Json& j);

// Left-aligned table with columns separated by two spaces.
std::string table(const std::vector<std::vector<std::string>>& rows);

}  // namespace jh::render
