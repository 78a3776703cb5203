#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "dshlab/errors.hpp"
#include "dshlab/json_io.hpp"
#include "dshlab/pipeline.hpp"
#include "dshlab/random_fixtures.hpp"
#include "dshlab/suites.hpp"
#include "dshlab/unitary_paths.hpp"

namespace dshlab::cli {

namespace {

constexpr unsigned long long kDefaultSeed = 20240601;

struct Options {
  std::optional<unsigned long long> seed;
  int trials = 0;
  int workers = 1;
  double epsilon = 0.25;
  int horizon = 1;
  std::size_t scan_length = 10000;
  int max_points = 0;
  std::string out;
  std::string substitution_file;
  std::string preset = "fibonacci";
  std::string base;
  std::vector<std::string> suites;
  int depth = 12;
  int block_count = 0;
  std::string input_file;
  bool timing = false;
  // unitary eval
  std::string kind;
  int n = 0;
  int a = 0;
  int b = 0;
  int k = 0;
  int m = 0;
  int block = 1;
  double t = 0.0;
  std::vector<int> positions;
  std::vector<double> theta;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Substitution load_substitution(const Options& o) {
  if (!o.substitution_file.empty()) {
    try {
      return substitution_from_json(read_json_file(o.substitution_file));
    } catch (const Json::exception& e) {
      throw PreconditionError("bad substitution file: " + std::string(e.what()));
    }
  }
  if (o.preset == "fibonacci") return Substitution::fibonacci();
  if (o.preset == "thue-morse") return Substitution::thue_morse();
  throw PreconditionError("unknown preset '" + o.preset + "' (fibonacci, thue-morse)");
}

// Flag, then DSH_LAB_SEED, then the built-in default.
unsigned long long resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("DSH_LAB_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw PreconditionError("DSH_LAB_SEED is not an unsigned integer");
  }
  return kDefaultSeed;
}

void emit(const Json& report, const Options& o, std::ostream& out) {
  const std::string text = report.dump(1) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw PreconditionError("cannot write '" + o.out + "'");
  file << text;
}

int cmd_return_words(const Options& o, std::ostream& out) {
  const Substitution s = load_substitution(o);
  const ReturnWords rw = return_words(s, o.base, o.scan_length);
  Json report{{"command", "return-words"}, {"substitution", substitution_to_json(s)}};
  report.update(return_words_to_json(rw));
  report["stabilization"] = {{"scan_lengths", {o.scan_length, 2 * o.scan_length}},
                             {"occurrences", rw.occurrences},
                             {"stable", true}};
  emit(report, o, out);
  return kOk;
}

int cmd_build_model(const Options& o, std::ostream& out) {
  const Substitution s = load_substitution(o);
  TowerOptions options;
  options.horizon = o.horizon;
  options.max_points_per_level = o.max_points;
  options.scan_length = o.scan_length;
  const TowerModel tower = build_tower_model(s, o.base, options);
  const auto validation = validate_model(*tower.model);
  Json report{{"command", "build-model"}, {"model", tower_to_json(tower)}, {"valid", validation.ok()}};
  if (!validation.ok()) report["errors"] = validation.violations;
  emit(report, o, out);
  return validation.ok() ? kOk : kDomain;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names = o.suites.empty() ? suite_names() : o.suites;
  for (const auto& name : names) {
    if (!is_suite(name)) {
      std::string valid;
      for (const auto& s : suite_names()) valid += (valid.empty() ? "" : ", ") + s;
      err << "unknown suite '" << name << "'; valid suites: " << valid << "\n";
      return kUsage;
    }
  }
  SuiteConfig config;
  config.seed = resolve_seed(o);
  config.trials = o.trials;
  config.workers = o.workers;
  Json mapping = Json::object();
  for (const auto& s : suite_names()) mapping[s] = suite_description(s);
  Json results = Json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const SuiteOutcome r = run_suite(name, config);
    all_pass = all_pass && r.pass;
    Json entry{{"name", r.name}, {"pass", r.pass}, {"trials", r.trials}, {"checks", r.checks}};
    if (!r.pass) entry["counterexample"] = r.counterexample;
    if (o.timing) entry["runtime_ms"] = r.runtime_ms;
    results.push_back(entry);
  }
  const Json report{{"command", "verify"}, {"seed", config.seed}, {"trials", o.trials},
                    {"suite_properties", mapping}, {"suites", results}, {"pass", all_pass}};
  emit(report, o, out);
  return all_pass ? kOk : kSuiteFailure;
}

int cmd_pipeline(const Options& o, std::ostream& out) {
  if (!(o.epsilon > 0.0)) throw PreconditionError("--epsilon must be positive");
  if (o.depth < 1) throw PreconditionError("--depth must be positive");
  const Substitution s = load_substitution(o);
  const std::string base = o.base.empty() ? std::string(1, s.seed()) : o.base;
  TowerOptions options;
  options.horizon = o.horizon;
  options.scan_length = o.scan_length;
  const CylinderChain chain = build_cylinder_chain(s, deepening_bases(s, base, o.depth, o.scan_length), options);
  const unsigned long long seed = resolve_seed(o);
  const ModelPtr& model = chain.model(0);
  Element input = Element::zero(model);
  std::string input_id;
  if (!o.input_file.empty()) {
    try {
      input = element_from_json(read_json_file(o.input_file), model);
    } catch (const Json::exception& e) {
      throw PreconditionError("bad element file: " + std::string(e.what()));
    }
    input_id = o.input_file;
  } else {
    const PointRef at = model->free_points(model->level_count()).front();
    input = planted_singular_element(model, at, seed);
    input_id = "planted@" + to_string(at);
  }
  PipelineOptions popts;
  popts.block_count = o.block_count;
  popts.input_id = input_id;
  const PipelineResult result = approximate_by_invertible(chain, 0, input, o.epsilon, popts);
  Json report{{"command", "pipeline"},
              {"seed", seed},
              {"base", base},
              {"chain_depth", o.depth},
              {"certificate", certificate_to_json(result.certificate, o.timing)}};
  emit(report, o, out);
  return result.certificate.passes() ? kOk : kDomain;
}

int cmd_unitary_eval(const Options& o, std::ostream& out) {
  ComplexMatrix u;
  if (o.kind == "swap") {
    u = swap_path(o.n, o.a, o.b, o.t);
  } else if (o.kind == "eta") {
    u = eta_path_between(o.n, o.k, o.m, o.block, o.t);
  } else if (o.kind == "condense") {
    u = CondensePath(o.n, o.positions)(o.t);
  } else if (o.kind == "vn") {
    u = v_n(ThetaVector(o.theta), o.block);
  } else {
    throw PreconditionError("unknown unitary kind '" + o.kind + "' (swap, eta, condense, vn)");
  }
  const Json report{{"command", "unitary eval"},
                    {"kind", o.kind},
                    {"unitarity_defect", unitarity_defect(u)},
                    {"matrix", matrix_to_json(u)}};
  emit(report, o, out);
  return kOk;
}

void add_source_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--substitution", o.substitution_file, "JSON file with alphabet, rules and seed");
  cmd->add_option("--preset", o.preset, "Built-in substitution: fibonacci or thue-morse");
  cmd->add_option("--scan-length", o.scan_length, "Fixed-point prefix length for return-word scans")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite-stage tools for diagonal subhomogeneous tower models"};
  app.require_subcommand(1);

  auto* rw = app.add_subcommand("return-words", "List the first-return words to a cylinder");
  add_source_flags(rw, o);
  rw->add_option("--base", o.base, "Base word")->required();
  rw->add_option("--out", o.out, "Output file");

  auto* bm = app.add_subcommand("build-model", "Build and validate the tower model of a cylinder");
  add_source_flags(bm, o);
  bm->add_option("--base", o.base, "Base word")->required();
  bm->add_option("--horizon", o.horizon, "Symbols stored past each return word")->check(CLI::PositiveNumber);
  bm->add_option("--max-points", o.max_points, "Cap on points per level (0 keeps all)")
      ->check(CLI::NonNegativeNumber);
  bm->add_option("--out", o.out, "Output file");

  auto* vf = app.add_subcommand("verify", "Run property suites");
  vf->add_option("--suite", o.suites, "Suite name (repeatable; default all)");
  vf->add_option("--seed", o.seed, "Seed (falls back to DSH_LAB_SEED)");
  vf->add_option("--trials", o.trials, "Trials per suite (0 uses suite defaults)")->check(CLI::NonNegativeNumber);
  vf->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  vf->add_flag("--timing", o.timing, "Include runtimes in the report");
  vf->add_option("--out", o.out, "Output file");

  auto* pl = app.add_subcommand("pipeline", "Approximate a singular element by an invertible one");
  add_source_flags(pl, o);
  pl->add_option("--base", o.base, "First base word (default: the substitution seed)");
  pl->add_option("--horizon", o.horizon, "Symbols stored past each return word")->check(CLI::PositiveNumber);
  pl->add_option("--epsilon", o.epsilon, "Approximation budget");
  pl->add_option("--depth", o.depth, "Maximum number of models in the chain");
  pl->add_option("--block-count", o.block_count, "Crosses per block start (0 picks the minimum)")
      ->check(CLI::NonNegativeNumber);
  pl->add_option("--input", o.input_file, "Element JSON on the first model (default: planted singularity)");
  pl->add_option("--seed", o.seed, "Seed for the planted element (falls back to DSH_LAB_SEED)");
  pl->add_flag("--timing", o.timing, "Include runtimes in the certificate");
  pl->add_option("--out", o.out, "Output file");

  auto* un = app.add_subcommand("unitary", "Inspect unitary paths");
  un->require_subcommand(1);
  auto* ev = un->add_subcommand("eval", "Evaluate one path at a parameter");
  ev->add_option("--kind", o.kind, "swap, eta, condense or vn")->required();
  ev->add_option("--n", o.n, "Matrix size");
  ev->add_option("--a", o.a, "First swapped position (swap)");
  ev->add_option("--b", o.b, "Second swapped position (swap)");
  ev->add_option("--k", o.k, "First block end (eta)");
  ev->add_option("--m", o.m, "Second block end (eta)");
  ev->add_option("--block", o.block, "Block length (eta, vn)");
  ev->add_option("--t", o.t, "Path parameter in [0, 1]");
  ev->add_option("--positions", o.positions, "Cross positions (condense)");
  ev->add_option("--theta", o.theta, "Parameter vector (vn)");
  ev->add_option("--out", o.out, "Output file");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (rw->parsed()) return cmd_return_words(o, out);
    if (bm->parsed()) return cmd_build_model(o, out);
    if (vf->parsed()) return cmd_verify(o, out, err);
    if (pl->parsed()) return cmd_pipeline(o, out);
    if (ev->parsed()) return cmd_unitary_eval(o, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace dshlab::cli
