#pragma once

#include <string>
#include <vector>

#include "tmm/common.hpp"

namespace tmm {

// one numeric check: pass when value <= tolerance unless a custom rule says otherwise
struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

Check check_le(std::string name, double value, double tol);
Check check_ge(std::string name, double value, double tol);
Check check_true(std::string name, bool ok);  // value 1/0, tolerance 1
bool all_pass(const std::vector<Check>& c);

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;
  bool pass() const { return all_pass(checks); }
};

// acceptance suites, numbered 1..11
std::vector<Check> suite_curve();
std::vector<Check> suite_masses();
std::vector<Check> suite_sqrt_vanishing();
std::vector<Check> suite_painleve();
std::vector<Check> suite_lax();
std::vector<Check> suite_rh();
std::vector<Check> suite_hm_extraction();
std::vector<Check> suite_asymptotics();
std::vector<Check> suite_pii();
std::vector<Check> suite_double_scaling();
std::vector<Check> suite_finite_n();

Criterion run_criterion(int id);
const char* criterion_title(int id);

}  // namespace tmm
