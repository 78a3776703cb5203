// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dshlab/pipeline.hpp"
#include "dshlab/random_fixtures.hpp"
#include "dshlab/suites.hpp"
#include "dshlab/unitary_paths.hpp"

using namespace dshlab;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(4);
  out << x;
  return out.str();
}

Verdict run_suites(const std::vector<std::string>& names, double limit_s) {
  const auto start = std::chrono::steady_clock::now();
  SuiteConfig config;
  bool pass = true;
  std::string detail;
  for (const auto& name : names) {
    const SuiteOutcome r = run_suite(name, config);
    pass = pass && r.pass;
    detail += name + ": " + std::to_string(r.trials) + " trials, " + std::to_string(r.checks) + " checks" +
              (r.pass ? "" : " FAILED (" + r.counterexample + ")") + "; ";
  }
  const double elapsed = seconds_since(start);
  detail += "runtime " + fmt(elapsed) + " s";
  if (limit_s > 0.0) {
    detail += " (limit " + fmt(limit_s) + " s)";
    pass = pass && elapsed < limit_s;
  }
  return {pass, detail};
}

Verdict criterion_path_endpoints() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(20240601);
  double endpoint_err = 0.0, unitarity = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 2, 12);
    const int a = uniform_int(rng, 1, n - 1);
    const int b = uniform_int(rng, a + 1, n);
    const TranspositionPathSpec spec{a, b, n};
    endpoint_err = std::max(endpoint_err, op_norm(u_transposition(spec, 0.0) - ComplexMatrix::identity(n)));
    endpoint_err = std::max(
        endpoint_err, op_norm(u_transposition(spec, 1.0) - perm_matrix(Permutation::transposition(n, a, b))));
    for (int s = 0; s < 100; ++s) {
      unitarity = std::max(unitarity, unitarity_defect(u_transposition(spec, uniform_real(rng))));
    }
  }
  const double elapsed = seconds_since(start);
  return {endpoint_err <= 1e-12 && unitarity <= 1e-10 && elapsed < 5.0,
          "endpoint error " + fmt(endpoint_err) + " (tol 1e-12), unitarity defect " + fmt(unitarity) +
              " (tol 1e-10), runtime " + fmt(elapsed) + " s (limit 5 s)"};
}

// Iterates the Fibonacci substitution directly and reads return words off
// the occurrences of the base word.
std::set<std::string> fibonacci_return_oracle(const std::string& base, std::size_t length) {
  std::string w = "0";
  while (w.size() < length) {
    std::string next;
    for (char c : w) next += c == '0' ? "01" : "0";
    w.swap(next);
  }
  w.resize(length);
  std::set<std::string> words;
  std::size_t prev = w.find(base);
  for (std::size_t pos = w.find(base, prev + 1); pos != std::string::npos; pos = w.find(base, pos + 1)) {
    words.insert(w.substr(prev, pos - prev));
    prev = pos;
  }
  return words;
}

Verdict criterion_return_words() {
  const auto start = std::chrono::steady_clock::now();
  const auto s = Substitution::fibonacci();
  const std::vector<std::pair<std::string, std::set<std::string>>> expected{{"0", {"0", "01"}},
                                                                            {"01", {"01", "010"}}};
  bool pass = true;
  std::string detail;
  for (const auto& [base, words] : expected) {
    for (std::size_t scan : {std::size_t{10000}, std::size_t{20000}}) {
      const auto rw = return_words(s, base, scan);
      const std::set<std::string> got(rw.words.begin(), rw.words.end());
      const bool ok = got == words && got == fibonacci_return_oracle(base, scan);
      pass = pass && ok;
      detail += "'" + base + "' @" + std::to_string(scan) + (ok ? " ok; " : " MISMATCH; ");
    }
  }
  const double elapsed = seconds_since(start);
  detail += "runtime " + fmt(elapsed) + " s (limit 2 s)";
  return {pass && elapsed < 2.0, detail};
}

Verdict criterion_pipeline() {
  const auto start = std::chrono::steady_clock::now();
  const auto s = Substitution::fibonacci();
  TowerOptions options;
  options.horizon = 1;
  const CylinderChain chain = build_cylinder_chain(s, deepening_bases(s, "0", 12), options);
  const ModelPtr& model = chain.model(0);
  const Element a = planted_singular_element(model, model->free_points(model->level_count()).front(), 20240601);
  const auto result = approximate_by_invertible(chain, 0, a, 0.25);
  const double elapsed = seconds_since(start);
  const auto& c = result.certificate;
  std::string failing;
  for (const auto& stage : c.stages)
    for (const auto& [name, pred] : stage.predicates)
      if (!pred.pass) failing += " " + stage.name + "." + name;
  const bool pass = c.total_distance < 0.25 && c.min_singular_value > 1e-3 && c.predicates_pass() && elapsed < 60.0;
  return {pass, "total distance " + fmt(c.total_distance) + " (< 0.25), min singular value " +
                    fmt(c.min_singular_value) + " (> 1e-3), predicates " +
                    (failing.empty() ? std::string("all pass") : "failing:" + failing) + ", runtime " +
                    fmt(elapsed) + " s (limit 60 s)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"path endpoints and unitarity", criterion_path_endpoints},
      {"conjugation identities", [] { return run_suites({"conj", "fullconj", "elementary"}, 30.0); }},
      {"gathering windows", [] { return run_suites({"block2"}, 0.0); }},
      {"condensing path", [] { return run_suites({"condense"}, 0.0); }},
      {"triangulating unitary", [] { return run_suites({"vn", "triangulate"}, 0.0); }},
      {"block-start characterization", [] { return run_suites({"blockchar"}, 0.0); }},
      {"return words", criterion_return_words},
      {"embedding homomorphism", [] { return run_suites({"embed"}, 0.0); }},
      {"simplicity witness", [] { return run_suites({"simplicity"}, 0.0); }},
      {"end-to-end approximation", criterion_pipeline},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
