#include "dshlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "dshlab/dynamics.hpp"
#include "dshlab/errors.hpp"
#include "dshlab/pipeline.hpp"
#include "dshlab/unitary_paths.hpp"

namespace dshlab {

namespace {

constexpr double kIdentityTol = 1e-12;

struct TrialResult {
  long checks = 0;
  std::optional<std::string> failure;

  // Counts a check and keeps the first failure message.
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && !failure) failure = what();
  }
};

using TrialFn = std::function<TrialResult(Rng&, int)>;

std::string join(const std::vector<int>& v) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << '}';
  return out.str();
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

// Trials are seeded by (seed, suite, index), so results do not depend on
// the number of workers.
SuiteOutcome run_trials(const std::string& name, const SuiteConfig& config, int default_trials,
                        const TrialFn& fn) {
  const auto start = std::chrono::steady_clock::now();
  const int trials = config.trials > 0 ? config.trials : default_trials;
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  const std::size_t name_hash = std::hash<std::string>{}(name);
  auto work = [&](int first, int stride) {
    for (int t = first; t < trials; t += stride) {
      std::seed_seq seq{static_cast<unsigned>(config.seed), static_cast<unsigned>(config.seed >> 32),
                        static_cast<unsigned>(name_hash), static_cast<unsigned>(t)};
      Rng rng(seq);
      try {
        results[static_cast<std::size_t>(t)] = fn(rng, t);
      } catch (const std::exception& e) {
        auto& r = results[static_cast<std::size_t>(t)];
        r.failure = std::string("unexpected exception: ") + e.what();
      }
    }
  };
  const int workers = std::clamp(config.workers, 1, std::max(1, trials));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& th : pool) th.join();
  }
  SuiteOutcome out{name, true, trials, 0, "", 0.0};
  for (int t = 0; t < trials; ++t) {
    const auto& r = results[static_cast<std::size_t>(t)];
    out.checks += r.checks;
    if (r.failure && out.pass) {
      out.pass = false;
      out.counterexample = "trial " + std::to_string(t) + ": " + *r.failure;
    }
  }
  out.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// Trial 0 and 1 pin the path endpoints; later trials sample the interior.
double sampled_t(Rng& rng, int trial) {
  if (trial == 0) return 0.0;
  if (trial == 1) return 1.0;
  return uniform_real(rng);
}

TrialResult conj_trial(Rng& rng, int trial) {
  TrialResult r;
  const double t = sampled_t(rng, trial);
  for (int n = 3; n <= 12; ++n)
    for (int k1 = 1; k1 <= n; ++k1)
      for (int k2 = k1 + 1; k2 <= n; ++k2)
        for (int k3 = k2 + 1; k3 <= n; ++k3) {
          const double res = conj_residual(n, k1, k2, k3, t);
          r.expect(res <= kIdentityTol, [&] {
            return "n=" + std::to_string(n) + " (" + std::to_string(k1) + "," + std::to_string(k2) +
                   "," + std::to_string(k3) + ") t=" + num(t) + " residual " + num(res);
          });
        }
  return r;
}

TrialResult fullconj_trial(Rng& rng, int trial) {
  TrialResult r;
  const double t = sampled_t(rng, trial);
  for (int n = 2; n <= 10; ++n)
    for (int block = 1; block <= 3; ++block)
      for (int i = 1; i <= n - block; ++i)
        for (int k = block; k <= i - block; ++k) {
          const double res = fullconj_residual(n, block, k, i, t);
          r.expect(res <= kIdentityTol, [&] {
            return "n=" + std::to_string(n) + " N=" + std::to_string(block) + " k=" +
                   std::to_string(k) + " i=" + std::to_string(i) + " t=" + num(t) + " residual " +
                   num(res);
          });
        }
  return r;
}

TrialResult elementary_trial(Rng&, int) {
  TrialResult r;
  for (int n = 2; n <= 14; ++n)
    for (int block = 1; block <= 3; ++block)
      for (int i = block + 1; i <= n - block; ++i) {
        const double res = elementary_residual(n, block, i);
        r.expect(res <= kIdentityTol, [&] {
          return "n=" + std::to_string(n) + " N=" + std::to_string(block) + " i=" +
                 std::to_string(i) + " residual " + num(res);
        });
      }
  return r;
}

TrialResult permute_trial(Rng& rng, int) {
  TrialResult r;
  const int n = uniform_int(rng, 3, 12);
  const int m = uniform_int(rng, 1, std::min(4, n - 1));
  auto picks = random_positions(rng, n, m + 1);
  const int k = picks.back();
  picks.pop_back();
  std::shuffle(picks.begin(), picks.end(), rng);
  const std::vector<int> zs = picks;
  DenseMatrix a = random_structured_matrix(rng, n, 0, zs).dense();
  for (int j = 0; j < n; ++j) {
    if (uniform_real(rng) < 0.3) a(k - 1, j) = 0.0;
    if (uniform_real(rng) < 0.3) a(j, k - 1) = 0.0;
  }
  const ComplexMatrix am(a);
  std::vector<double> ts;
  for (int j = 0; j < m; ++j) ts.push_back(uniform_real(rng));
  if (uniform_real(rng) < 0.5) ts[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))] = 1.0;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (int j = 0; j < m; ++j) v = swap_path(n, k, zs[static_cast<std::size_t>(j)], ts[static_cast<std::size_t>(j)]) * v;
  const ComplexMatrix b = v * am * v.adjoint();

  std::vector<bool> in_s(static_cast<std::size_t>(n + 1), false);
  in_s[static_cast<std::size_t>(k)] = true;
  for (int z : zs) in_s[static_cast<std::size_t>(z)] = true;
  auto nz = [](Complex x) { return std::abs(x) > kIdentityTol; };
  const std::string ctx = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " zs=" + join(zs);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const bool si = in_s[static_cast<std::size_t>(i)], sj = in_s[static_cast<std::size_t>(j)];
      const Complex bij = b(i - 1, j - 1);
      if (!si && !sj) {
        r.expect(std::abs(bij - am(i - 1, j - 1)) <= kIdentityTol,
                 [&] { return ctx + ": entry (" + std::to_string(i) + "," + std::to_string(j) + ") changed"; });
      } else if (si && !sj) {
        r.expect(!nz(bij) || nz(am(k - 1, j - 1)),
                 [&] { return ctx + ": row rule fails at (" + std::to_string(i) + "," + std::to_string(j) + ")"; });
      } else if (!si && sj) {
        r.expect(!nz(bij) || nz(am(i - 1, k - 1)),
                 [&] { return ctx + ": column rule fails at (" + std::to_string(i) + "," + std::to_string(j) + ")"; });
      }
    }
  if (std::find(ts.begin(), ts.end(), 1.0) != ts.end()) {
    r.expect(has_zero_cross(b, k), [&] { return ctx + ": no zero cross at k although some t = 1"; });
  }

  // Locality of a single conjugation.
  const int p = uniform_int(rng, 1, n);
  int q = uniform_int(rng, 1, n - 1);
  if (q >= p) ++q;
  const double t = uniform_real(rng);
  const ComplexMatrix u = swap_path(n, p, q, t);
  const ComplexMatrix full = random_matrix(rng, n);
  const ComplexMatrix conj_full = u * full * u.adjoint();
  auto sigma = [&](int x) { return x == p ? q : x == q ? p : x; };
  for (int trial = 0; trial < 4; ++trial) {
    const int i = uniform_int(rng, 1, n), j = uniform_int(rng, 1, n);
    DenseMatrix kept = DenseMatrix::Zero(n, n);
    for (int x : {i, sigma(i)})
      for (int y : {j, sigma(j)}) kept(x - 1, y - 1) = full(x - 1, y - 1);
    const ComplexMatrix conj_kept = u * ComplexMatrix(kept) * u.adjoint();
    r.expect(std::abs(conj_kept(i - 1, j - 1) - conj_full(i - 1, j - 1)) <= kIdentityTol, [&] {
      return "locality fails at (" + std::to_string(i) + "," + std::to_string(j) + ") for swap (" +
             std::to_string(p) + " " + std::to_string(q) + ")";
    });
  }
  return r;
}

// Zero-cross markers: a 1 at each forced position, random values in [0, 1]
// at the other crosses, 0 elsewhere.
std::vector<double> random_delta(Rng& rng, int n, const std::vector<int>& crosses,
                                 const std::vector<int>& ones) {
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  for (int z : crosses) {
    const double u = uniform_real(rng);
    d[static_cast<std::size_t>(z - 1)] = u < 0.3 ? 0.0 : u < 0.5 ? 1.0 : uniform_real(rng, 0.01, 1.0);
  }
  for (int z : ones) d[static_cast<std::size_t>(z - 1)] = 1.0;
  return d;
}

TrialResult block1_trial(Rng& rng, int) {
  TrialResult r;
  const int n = uniform_int(rng, 3, 12);
  const int window = uniform_int(rng, 2, n);
  const int k = uniform_int(rng, 1, n - window + 1);
  const int one = uniform_int(rng, k, k + window - 1);
  auto zs = random_positions(rng, n, uniform_int(rng, 0, n / 2));
  if (std::find(zs.begin(), zs.end(), one) == zs.end()) zs.push_back(one);
  std::sort(zs.begin(), zs.end());
  const ComplexMatrix a = random_structured_matrix(rng, n, 0, zs);
  const ThetaVector delta(random_delta(rng, n, zs, {one}));
  const auto [v, b] = gather_once(a, k, delta, window);
  r.expect(has_zero_cross(b, k), [&] {
    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " M=" + std::to_string(window) +
           " crosses " + join(zs) + ": no zero cross at k";
  });
  r.expect(unitarity_defect(v) <= 1e-10, [&] { return "gathering unitary not unitary"; });
  return r;
}

TrialResult block2_trial(Rng& rng, int) {
  TrialResult r;
  const int n = uniform_int(rng, 6, 24);
  const int window = uniform_int(rng, 2, std::max(2, std::min(6, n / 2)));
  std::vector<int> ks;
  for (int k = uniform_int(rng, 1, window); k <= n - window + 1; k += window + uniform_int(rng, 0, window)) {
    ks.push_back(k);
  }
  if (ks.empty()) ks.push_back(1);
  std::vector<int> ones;
  for (int k : ks) ones.push_back(uniform_int(rng, k, k + window - 1));
  auto zs = random_positions(rng, n, uniform_int(rng, 0, n / 4));
  for (int z : ones)
    if (std::find(zs.begin(), zs.end(), z) == zs.end()) zs.push_back(z);
  std::sort(zs.begin(), zs.end());
  const ComplexMatrix a = random_structured_matrix(rng, n, uniform_int(rng, 1, n), zs);
  const ThetaVector delta(random_delta(rng, n, zs, ones));
  const int before = diagonal_radius(a);
  const auto [v, b] = gather_multi(a, delta, ks, window);
  const std::string ctx = "n=" + std::to_string(n) + " M=" + std::to_string(window) + " ks=" + join(ks);
  for (int k : ks) {
    r.expect(has_zero_cross(b, k), [&] { return ctx + ": no zero cross at " + std::to_string(k); });
  }
  const int after = diagonal_radius(b);
  r.expect(after <= before + window - 1, [&] {
    return ctx + ": radius " + std::to_string(before) + " -> " + std::to_string(after);
  });
  return r;
}

TrialResult condense_trial(Rng& rng, int) {
  TrialResult r;
  const int n = uniform_int(rng, 3, 24);
  const int m = uniform_int(rng, 1, std::min(5, n));
  const auto zs = random_positions(rng, n, m);
  const ComplexMatrix a = random_structured_matrix(rng, n, uniform_int(rng, 1, n), zs);
  const int before = diagonal_radius(a);
  const CondensePath path(n, zs);
  const std::string ctx = "n=" + std::to_string(n) + " zs=" + join(zs);
  constexpr int kSamples = 50;
  for (int s = 0; s < kSamples; ++s) {
    const double theta = static_cast<double>(s) / (kSamples - 1);
    const ComplexMatrix v = path(theta);
    const ComplexMatrix b = v * a * v.adjoint();
    const int after = diagonal_radius(b);
    r.expect(after <= before + 2, [&] {
      return ctx + " theta=" + num(theta) + ": radius " + std::to_string(before) + " -> " +
             std::to_string(after);
    });
    r.expect(unitarity_defect(v) <= 1e-10, [&] { return ctx + ": path not unitary"; });
    if (s == 0) {
      r.expect(v.approx_equal(ComplexMatrix::identity(n)), [&] { return ctx + ": V(0) is not 1"; });
    }
    if (s == kSamples - 1) {
      for (int k = 1; k <= m; ++k) {
        r.expect(has_zero_cross(b, k), [&] { return ctx + ": no zero cross at " + std::to_string(k) + " at theta=1"; });
      }
    }
  }
  return r;
}

TrialResult vn_trial(Rng& rng, int) {
  TrialResult r;
  const int n = uniform_int(rng, 4, 20);
  const int block = uniform_int(rng, 1, std::min(3, n / 2));
  const ThetaVector theta = random_triangulation_theta(rng, n, block);
  const double res = vn_block_residual(theta, block);
  r.expect(res <= kPathAtol, [&] {
    return "n=" + std::to_string(n) + " N=" + std::to_string(block) + ": block residual " + num(res);
  });
  r.expect(unitarity_defect(v_n(theta, block)) <= 1e-10, [&] { return "v_n not unitary"; });
  return r;
}

TrialResult triangulate_trial(Rng& rng, int) {
  TrialResult r;
  const int n = uniform_int(rng, 4, 20);
  const int block = uniform_int(rng, 1, std::min(3, n / 2));
  const ThetaVector theta = random_triangulation_theta(rng, n, block);
  std::vector<int> zs;
  for (int k = 1; k <= n; ++k)
    if (theta.at(k) > 0.0)
      for (int z = k; z < k + block && z <= n; ++z) zs.push_back(z);
  const ComplexMatrix a = random_structured_matrix(rng, n, uniform_int(rng, 1, block), zs);
  const std::string ctx = "n=" + std::to_string(n) + " N=" + std::to_string(block);
  try {
    const ComplexMatrix t = triangulate_check(a, theta, block);
    r.expect(is_strictly_lower_triangular(a * v_n(theta, block), kPathAtol),
             [&] { return ctx + ": product not strictly lower"; });
    r.expect(t.approx_equal(a * v_n(theta, block), kPathAtol), [&] { return ctx + ": returned product differs"; });
  } catch (const PreconditionError& e) {
    r.expect(false, [&] { return ctx + ": " + e.what(); });
  }
  return r;
}

TrialResult blockchar_trial(Rng& rng, int) {
  TrialResult r;
  const auto model = std::make_shared<const FiniteDshModel>(random_model(rng));
  std::vector<Element> samples;
  for (int s = 0; s < 100; ++s) samples.push_back(random_element(rng, model));
  const auto starts = block_starts(*model);
  for (const auto& p : model->all_points()) {
    std::vector<ComplexMatrix> values;
    for (const auto& e : samples) values.push_back(eval_element(e, p));
    const auto& sp = starts.at(p);
    for (int k = 1; k <= model->dim(p.level); ++k) {
      const bool member = std::find(sp.begin(), sp.end(), k) != sp.end();
      std::optional<Element> witness;
      try {
        witness = witness_no_block_point(model, p, k);
      } catch (const DomainError&) {
      }
      const std::string ctx = to_string(p) + " k=" + std::to_string(k);
      r.expect(member == !witness.has_value(), [&] {
        return ctx + (member ? ": witness built at a block start" : ": no witness off the block starts");
      });
      if (witness) {
        r.expect(!has_block_point(eval_element(*witness, p), k), [&] { return ctx + ": witness keeps the block point"; });
      } else {
        for (const auto& v : values) {
          r.expect(has_block_point(v, k), [&] { return ctx + ": random element lacks a block point"; });
        }
      }
    }
  }
  return r;
}

TrialResult indicator_trial(Rng& rng, int) {
  TrialResult r;
  const auto model = std::make_shared<const FiniteDshModel>(random_model(rng));
  const int n1 = model->dim(1);
  const int block = uniform_int(rng, 1, n1 - 1);
  std::vector<int> offsets;
  for (int k = uniform_int(rng, 0, n1 - block); k <= n1 - block; k += block + uniform_int(rng, 0, n1)) {
    offsets.push_back(k);
  }
  const auto starts = block_starts(*model);
  std::set<std::pair<PointRef, int>> required;
  for (const auto& [p, ks] : starts)
    for (int k : ks)
      for (int o : offsets) required.insert({p, k + o});
  ForbiddenFlags flags;
  for (const auto& p : model->all_points())
    for (int k = 1; k <= model->dim(p.level); ++k)
      if (!required.contains({p, k}) && uniform_real(rng) < 0.2) flags.insert({p, k});
  const Element theta = build_indicator(model, block, offsets, flags);
  const std::string ctx = "M=" + std::to_string(block) + " K=" + join(offsets);
  for (const auto& p : model->all_points()) {
    const ComplexMatrix v = eval_element(theta, p);
    const int n = v.dim();
    std::vector<double> d;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) r.expect(v(i, j) == 0.0, [&] { return ctx + ": off-diagonal entry at " + to_string(p); });
      }
      d.push_back(v(i, i).real());
      r.expect(v(i, i).imag() == 0.0 && d.back() >= 0.0 && d.back() <= 1.0,
               [&] { return ctx + ": entry outside [0,1] at " + to_string(p); });
    }
    for (int k = 1; k + block - 1 <= n; ++k) {
      int nonzero = 0;
      for (int i = k; i < k + block; ++i) nonzero += d[static_cast<std::size_t>(i - 1)] != 0.0;
      r.expect(nonzero <= 1, [&] { return ctx + ": two nonzeros in window " + std::to_string(k) + " at " + to_string(p); });
    }
    for (int k = n - block + 2; k <= n; ++k) {
      r.expect(d[static_cast<std::size_t>(k - 1)] == 0.0,
               [&] { return ctx + ": trailing entry " + std::to_string(k) + " nonzero at " + to_string(p); });
    }
    for (int k = 1; k <= n; ++k) {
      if (flags.contains({p, k})) {
        r.expect(d[static_cast<std::size_t>(k - 1)] == 0.0, [&] { return ctx + ": flagged entry nonzero"; });
      }
    }
    for (int k : starts.at(p))
      for (int o : offsets) {
        r.expect(d[static_cast<std::size_t>(k + o - 1)] == 1.0,
                 [&] { return ctx + ": entry " + std::to_string(k + o) + " is not 1 at " + to_string(p); });
      }
  }
  bool rejected = false;
  try {
    const auto& [p, k] = *required.begin();
    build_indicator(model, block, offsets, {{p, k}});
  } catch (const DomainError&) {
    rejected = true;
  }
  r.expect(rejected, [&] { return ctx + ": infeasible flag accepted"; });
  return r;
}

std::vector<WordLocalFunction> sample_f() {
  auto ones = [](std::string_view w) { return static_cast<double>(std::count(w.begin(), w.end(), '1')); };
  return {
      {"first_is_1", 1, [](std::string_view w) { return Complex(w[0] == '1'); }},
      {"window_01", 2, [](std::string_view w) { return Complex(w == "01"); }},
      {"window_010", 3, [](std::string_view w) { return Complex(w == "010"); }},
      {"ones_weighted", 3, [=](std::string_view w) { return Complex(0.5, 0.25 * ones(w)); }},
      {"first_phase", 1, [](std::string_view w) { return w[0] == '0' ? Complex(2.0) : Complex(0.0, -1.0); }},
  };
}

std::vector<WordLocalFunction> sample_g() {
  return {
      {"first_is_1", 1, [](std::string_view w) { return Complex(w[0] == '1'); }},
      {"window_10", 2, [](std::string_view w) { return w == "10" ? Complex(1.0, 1.0) : Complex(0.0); }},
      {"one_then", 2,
       [](std::string_view w) {
         return w[0] == '1' ? Complex(0.3, -0.7) * (w[1] == '0' ? 1.0 : 2.0) : Complex(0.0);
       }},
  };
}

TrialResult embed_trial(Rng&, int) {
  TrialResult r;
  const auto s = Substitution::fibonacci();
  const std::vector<std::string> bases{"0", "01", "0100101"};
  TowerOptions options;
  options.horizon = 3;
  const CylinderChain chain = build_cylinder_chain(s, bases, options);
  std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 2}, {0, 2}};
  for (const auto& [i, j] : pairs) {
    const DiagonalMap d = chain_map(chain.maps, i, j);
    const TowerModel& src = chain.towers[static_cast<std::size_t>(i)];
    const TowerModel& dst = chain.towers[static_cast<std::size_t>(j)];
    const std::string ctx = "'" + src.base + "' -> '" + dst.base + "'";
    for (const auto& f : sample_f()) {
      const Element lhs = apply_diagonal_map(d, generator_f_element(f, src));
      const Element rhs = generator_f_element(f, dst);
      for (const auto& p : dst.model->free_points()) {
        r.expect(lhs.value(p).approx_equal(rhs.value(p), kIdentityTol),
                 [&] { return ctx + " f=" + f.name + " differs at " + to_string(p); });
      }
    }
    for (const auto& g : sample_g()) {
      const Element lhs = apply_diagonal_map(d, generator_ug_element(g, src));
      const Element rhs = generator_ug_element(g, dst);
      for (const auto& p : dst.model->free_points()) {
        r.expect(lhs.value(p).approx_equal(rhs.value(p), kIdentityTol),
                 [&] { return ctx + " ug=" + g.name + " differs at " + to_string(p); });
      }
    }
  }
  // Composing the two steps agrees with factoring directly.
  const auto direct = embedding_map(factorize_returns(s, bases[0], bases[2]), chain.towers[0], chain.towers[2]);
  r.expect(direct.lists() == chain_map(chain.maps, 0, 2).lists(),
           [&] { return "composed embedding differs from the direct factorization"; });
  for (std::size_t j = 1; j < bases.size(); ++j) {
    const auto f = factorize_returns(s, bases[j - 1], bases[j]);
    for (const auto& [word, parts] : f.factors) {
      std::string glued;
      for (const auto& part : parts) glued += part;
      r.expect(glued == word, [&] { return "factors of '" + word + "' do not concatenate back"; });
      std::vector<int> occ;
      const std::string text = word + bases[j];
      for (std::size_t pos = 0; pos < word.size(); ++pos)
        if (text.compare(pos, bases[j - 1].size(), bases[j - 1]) == 0) occ.push_back(static_cast<int>(pos));
      r.expect(occ == f.offsets(word), [&] { return "offsets of '" + word + "' are not the occurrences"; });
    }
  }
  return r;
}

TrialResult simplicity_trial(Rng&, int) {
  TrialResult r;
  const auto s = Substitution::fibonacci();
  TowerOptions options;
  options.horizon = 1;
  constexpr int kDepth = 6;
  const CylinderChain chain = build_cylinder_chain(s, deepening_bases(s, "0", 2 * kDepth), options);
  for (int i = 0; i < kDepth; ++i) {
    for (const auto& p : chain.model(i)->free_points()) {
      const auto w = check_simplicity_condition(chain.maps, i, {p});
      r.expect(w.holds && *w.j - i <= kDepth, [&] {
        return "no witness within " + std::to_string(kDepth) + " steps for " + to_string(p) + " in model " + std::to_string(i);
      });
    }
  }
  // Identity-shaped chains never spread a proper subset.
  const auto model = chain.model(0);
  const std::vector<DiagonalMap> flat(3, identity_map(model));
  const auto w = check_simplicity_condition(flat, 0, {model->free_points().front()});
  r.expect(!w.holds, [&] { return "identity chain reported simple"; });
  return r;
}

struct SuiteEntry {
  std::string description;
  int default_trials;
  TrialFn fn;
};

const std::map<std::string, SuiteEntry>& registry() {
  static const std::map<std::string, SuiteEntry> entries{
      {"conj", {"conjugating a transposition path by a swap relabels it; all index triples with n <= 12", 20, conj_trial}},
      {"fullconj", {"block-swap paths conjugate into one another; all valid tuples with n <= 10, N <= 3", 20, fullconj_trial}},
      {"elementary", {"cycle powers times a block swap split into two cycle powers; n <= 14, N <= 3", 1, elementary_trial}},
      {"permute", {"conjugating by paths into zero crosses fixes outside entries, restricts supports, clears position k", 200, permute_trial}},
      {"block1", {"one gathering window produces a zero cross at its start", 200, block1_trial}},
      {"block2", {"spaced gathering windows produce all crosses and grow the radius by at most M - 1", 200, block2_trial}},
      {"condense", {"the condensing path moves crosses to the front and grows the radius by at most 2 at every parameter", 100, condense_trial}},
      {"vn", {"the triangulating unitary splits block-diagonally at the positions where its parameters are 1", 100, vn_trial}},
      {"triangulate", {"banded matrices with crosses after nonzero parameters become strictly lower triangular", 100, triangulate_trial}},
      {"blockchar", {"block starts are exactly the positions where no element can break the block point", 50, blockchar_trial}},
      {"indicator", {"the block-start indicator is diagonal, sparse, vanishes at the end and at flags, and is 1 at offsets", 50, indicator_trial}},
      {"embed", {"embedding maps between Fibonacci towers carry generator values to generator values", 1, embed_trial}},
      {"simplicity", {"every single point of the Fibonacci chain is met by all eigenvalue lists within 6 steps", 1, simplicity_trial}},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"conj",     "fullconj", "elementary", "permute",    "block1",
                                              "block2",   "condense", "vn",         "triangulate", "blockchar",
                                              "indicator", "embed",   "simplicity"};
  return names;
}

bool is_suite(const std::string& name) { return registry().contains(name); }

std::string suite_description(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
  return it->second.description;
}

SuiteOutcome run_suite(const std::string& name, const SuiteConfig& config) {
  auto it = registry().find(name);
  if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
  return run_trials(name, config, it->second.default_trials, it->second.fn);
}

double conj_residual(int n, int k1, int k2, int k3, double t) {
  const ComplexMatrix swap = perm_matrix(Permutation::transposition(n, k2, k3));
  const ComplexMatrix lhs = swap * u_transposition({k1, k2, n}, t) * swap;
  return max_entry_distance(lhs, u_transposition({k1, k3, n}, t));
}

double fullconj_residual(int n, int block, int k, int i, double t) {
  const ComplexMatrix swap = perm_matrix(eta_permutation(n, i, n, block));
  const ComplexMatrix rhs = swap * eta_path_between(n, k, i, block, t) * swap;
  return max_entry_distance(eta_path_between(n, k, n, block, t), rhs);
}

double elementary_residual(int n, int block, int i) {
  const ComplexMatrix lhs = perm_matrix(Permutation::cycle(n, 1, n)).power(block) *
                            perm_matrix(eta_permutation(n, i - 1, n, block));
  const ComplexMatrix rhs = perm_matrix(Permutation::cycle(n, 1, i - 1)).power(block) *
                            perm_matrix(Permutation::cycle(n, i, n)).power(block);
  return max_entry_distance(lhs, rhs);
}

double vn_block_residual(const ThetaVector& theta, int block) {
  std::vector<int> ks;
  for (int k = 1; k <= theta.size(); ++k)
    if (theta.at(k) == 1.0) ks.push_back(k);
  ks.push_back(theta.size() + 1);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t t = 0; t + 1 < ks.size(); ++t) {
    blocks.push_back(v_n_unchecked(theta.slice(ks[t], ks[t + 1] - 1), block));
  }
  return max_entry_distance(v_n(theta, block), block_diagonal(blocks));
}

}  // namespace dshlab
