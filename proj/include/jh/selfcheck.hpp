#pragma once

// Invariant suites over all modules for one prime, used by `jhcalc selfcheck`.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "jh/arith.hpp"

namespace jh::selfcheck {

struct Options {
  int prime = 3;
  int p_prec = 4;
  int u_prec = 4;
  int trials = 20;  // randomized samples per property
  unsigned long seed = 20240611;
};

struct SuiteResult {
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;
  double seconds = 0;
  bool passed() const { return failures.empty(); }
};

E0Element random_element(const Precision& prec, gmp_randclass& rng);
E0Element random_unit(const Precision& prec, gmp_randclass& rng);

SuiteResult arith_suite(const Options& o);
SuiteResult fgl_suite(const Options& o);
SuiteResult sigmap_suite(const Options& o);
SuiteResult symm_suite(const Options& o);
SuiteResult mono_suite(const Options& o);

std::vector<SuiteResult> run_all(const Options& o);

}  // namespace jh::selfcheck
