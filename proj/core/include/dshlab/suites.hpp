#pragma once

// Seeded property suites over every module. Each suite reports the first
// counterexample it finds.

#include <optional>
#include <string>
#include <vector>

#include "dshlab/random_fixtures.hpp"

namespace dshlab {

struct SuiteConfig {
  unsigned long seed = 20240601;
  /// Trials per suite; 0 selects the suite's default.
  int trials = 0;
  /// Worker threads for independent trials.
  int workers = 1;
};

struct SuiteOutcome {
  std::string name;
  bool pass = true;
  int trials = 0;
  long checks = 0;
  std::string counterexample;
  double runtime_ms = 0.0;
};

const std::vector<std::string>& suite_names();
/// One-line statement of the property a suite checks.
std::string suite_description(const std::string& name);
bool is_suite(const std::string& name);

/// Throws PreconditionError for an unknown name.
SuiteOutcome run_suite(const std::string& name, const SuiteConfig& config);

// Pointwise checks shared by the suites and the tests.

/// ||U[(k2 k3)] u_(k1 k2)(t) U[(k2 k3)] - u_(k1 k3)(t)|| entrywise.
double conj_residual(int n, int k1, int k2, int k3, double t);
/// Residual of u_{eta(k, n)}(t) = U[eta(i, n)] u_{eta(k, i)}(t) U[eta(i, n)].
double fullconj_residual(int n, int block, int k, int i, double t);
/// Residual of U[gamma_{1,n}]^N U[eta_{i-1,n}] = U[gamma_{1,i-1}]^N U[gamma_{i,n}]^N.
double elementary_residual(int n, int block, int i);
/// Residual of v_n against the block diagonal over the positions where theta is 1.
double vn_block_residual(const ThetaVector& theta, int block);

}  // namespace dshlab
