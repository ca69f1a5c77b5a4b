#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catgen {

struct ValidationOptions {
  int fock_dim = 16;          ///< levels per mode in the Fock oracle
  bool flip_bs_sign = false;  ///< mutation: reverse the mixing beam splitter phase in the oracle
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Oracle equivalence, invariants and reference numbers.
ValidationReport validate(const ValidationOptions& options = {});

void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace catgen
