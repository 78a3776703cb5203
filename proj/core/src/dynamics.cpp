#include "dshlab/dynamics.hpp"

#include <algorithm>
#include <set>

#include "dshlab/errors.hpp"

namespace dshlab {

namespace {

bool shorter_then_lex(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

std::vector<std::size_t> occurrences(std::string_view text, std::string_view word) {
  std::vector<std::size_t> out;
  for (auto pos = text.find(word); pos != std::string_view::npos; pos = text.find(word, pos + 1)) {
    out.push_back(pos);
  }
  return out;
}

}  // namespace

Substitution::Substitution(std::vector<char> alphabet, std::map<char, std::string> rules,
                           std::optional<char> seed)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  if (alphabet_.empty()) throw PreconditionError("empty alphabet");
  std::set<char> symbols(alphabet_.begin(), alphabet_.end());
  if (symbols.size() != alphabet_.size()) throw PreconditionError("repeated alphabet symbol");
  for (char a : alphabet_) {
    auto it = rules_.find(a);
    if (it == rules_.end() || it->second.empty()) {
      throw PreconditionError(std::string("symbol '") + a + "' has no nonempty image");
    }
    for (char b : it->second) {
      if (!symbols.contains(b)) {
        throw PreconditionError(std::string("image of '") + a + "' uses unknown symbol '" + b + "'");
      }
    }
  }
  if (rules_.size() != alphabet_.size()) throw PreconditionError("rule for a symbol not in the alphabet");
  if (seed) {
    if (!symbols.contains(*seed)) throw PreconditionError("seed is not in the alphabet");
    if (rules_.at(*seed).front() != *seed) {
      throw DomainError(std::string("image of seed '") + *seed + "' does not start with it");
    }
    seed_ = *seed;
  } else {
    auto it = std::find_if(alphabet_.begin(), alphabet_.end(),
                           [&](char a) { return rules_.at(a).front() == a; });
    if (it == alphabet_.end()) throw DomainError("no symbol seeds a fixed point");
    seed_ = *it;
  }
}

Substitution Substitution::fibonacci() { return Substitution({'0', '1'}, {{'0', "01"}, {'1', "0"}}); }

Substitution Substitution::thue_morse() {
  return Substitution({'0', '1'}, {{'0', "01"}, {'1', "10"}});
}

std::string Substitution::apply(std::string_view word) const {
  std::string out;
  for (char c : word) out += rules_.at(c);
  return out;
}

bool Substitution::is_primitive() const {
  const std::size_t d = alphabet_.size();
  std::map<char, std::size_t> idx;
  for (std::size_t i = 0; i < d; ++i) idx[alphabet_[i]] = i;
  std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
  for (std::size_t i = 0; i < d; ++i) {
    for (char c : rules_.at(alphabet_[i])) reach[i][idx[c]] = true;
  }
  // A nonnegative d x d matrix is primitive iff its power (d-1)^2 + 1 is positive.
  std::vector<std::vector<bool>> power = reach;
  const std::size_t exponent = (d - 1) * (d - 1) + 1;
  for (std::size_t e = 1; e < exponent; ++e) {
    std::vector<std::vector<bool>> next(d, std::vector<bool>(d, false));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (power[i][k])
          for (std::size_t j = 0; j < d; ++j) next[i][j] = next[i][j] || reach[k][j];
    power = std::move(next);
  }
  for (const auto& row : power)
    for (bool b : row)
      if (!b) return false;
  return true;
}

std::string fixed_point_prefix(const Substitution& s, std::size_t length) {
  std::string w(1, s.seed());
  while (w.size() < length) {
    std::string next = s.apply(w);
    if (next.size() <= w.size()) throw DomainError("substitution does not grow from its seed");
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

std::vector<int> ReturnWords::return_times() const {
  std::set<int> t;
  for (const auto& w : words) t.insert(static_cast<int>(w.size()));
  return {t.begin(), t.end()};
}

std::vector<std::string> scan_return_words(std::string_view prefix, std::string_view base) {
  const auto occ = occurrences(prefix, base);
  std::set<std::string> words;
  for (std::size_t j = 1; j < occ.size(); ++j) {
    words.emplace(prefix.substr(occ[j - 1], occ[j] - occ[j - 1]));
  }
  std::vector<std::string> out(words.begin(), words.end());
  std::sort(out.begin(), out.end(), shorter_then_lex);
  return out;
}

ReturnWords return_words(const Substitution& s, const std::string& base, std::size_t scan_length) {
  if (base.empty()) throw PreconditionError("base word is empty");
  if (scan_length <= base.size()) throw PreconditionError("scan length must exceed the base word");
  const std::string prefix = fixed_point_prefix(s, 2 * scan_length);
  const std::string_view view(prefix);
  const auto occ = occurrences(view, base);
  if (occ.empty()) throw DomainError("'" + base + "' does not occur in the scanned language");
  if (occ.size() < 2 || occ[1] + base.size() > scan_length) {
    throw DomainError("'" + base + "' has no second occurrence within " +
                      std::to_string(scan_length) + " symbols");
  }
  auto short_scan = scan_return_words(view.substr(0, scan_length), base);
  auto long_scan = scan_return_words(view, base);
  if (short_scan != long_scan) {
    throw DomainError("return words to '" + base + "' did not stabilize between scan lengths " +
                      std::to_string(scan_length) + " and " + std::to_string(2 * scan_length) +
                      "; increase the scan length");
  }
  return {base, std::move(long_scan), scan_length, occ.size()};
}

TowerModel build_tower_model(const Substitution& s, const std::string& base,
                             const TowerOptions& options) {
  if (options.horizon < 0) throw PreconditionError("horizon must be nonnegative");
  if (options.max_points_per_level < 0) throw PreconditionError("negative point cap");
  const ReturnWords rw = return_words(s, base, options.scan_length);
  const std::string prefix = fixed_point_prefix(s, 2 * options.scan_length);
  const auto occ = occurrences(prefix, base);

  std::map<int, std::vector<std::string>> sampled;
  std::set<std::string> seen;
  for (std::size_t j = 1; j < occ.size(); ++j) {
    const int n = static_cast<int>(occ[j] - occ[j - 1]);
    const std::size_t len = static_cast<std::size_t>(n + options.horizon);
    if (occ[j - 1] + len > prefix.size()) break;
    std::string word = prefix.substr(occ[j - 1], len);
    if (!seen.insert(word).second) continue;
    auto& level = sampled[n];
    if (options.max_points_per_level > 0 &&
        static_cast<int>(level.size()) >= options.max_points_per_level) {
      continue;
    }
    level.push_back(std::move(word));
  }

  std::vector<Level> levels;
  for (int n : rw.return_times()) {
    auto it = sampled.find(n);
    if (it == sampled.end()) {
      throw DomainError("no sampled point for return time " + std::to_string(n));
    }
    Level level{n, {}};
    for (const auto& w : it->second) level.points.push_back({w, false, {}});
    levels.push_back(std::move(level));
  }
  return {base, rw.words, options.horizon,
          std::make_shared<const FiniteDshModel>(std::move(levels))};
}

std::vector<int> FactorizationMap::offsets(const std::string& inner_word) const {
  std::vector<int> out;
  int s = 0;
  for (const auto& f : factors.at(inner_word)) {
    out.push_back(s);
    s += static_cast<int>(f.size());
  }
  return out;
}

FactorizationMap factorize_returns(const Substitution& s, const std::string& outer,
                                   const std::string& inner, std::size_t scan_length) {
  if (inner.size() <= outer.size() || inner.compare(0, outer.size(), outer) != 0) {
    throw PreconditionError("'" + outer + "' must be a proper prefix of '" + inner + "'");
  }
  const ReturnWords out_rw = return_words(s, outer, scan_length);
  const ReturnWords in_rw = return_words(s, inner, scan_length);
  if (out_rw.words == in_rw.words) {
    throw PreconditionError("cylinders of '" + outer + "' and '" + inner +
                            "' coincide in the language");
  }
  const std::set<std::string> outer_words(out_rw.words.begin(), out_rw.words.end());
  FactorizationMap f{outer, inner, {}};
  for (const auto& r : in_rw.words) {
    const std::string text = r + inner;
    std::vector<std::size_t> cuts;
    for (auto p : occurrences(text, outer)) {
      if (p < r.size()) cuts.push_back(p);
    }
    cuts.push_back(r.size());
    std::vector<std::string> parts;
    for (std::size_t j = 1; j < cuts.size(); ++j) {
      std::string part = r.substr(cuts[j - 1], cuts[j] - cuts[j - 1]);
      if (!outer_words.contains(part)) {
        throw DomainError("factor '" + part + "' of '" + r + "' is not a return word to '" +
                          outer + "'; scan more of the language");
      }
      parts.push_back(std::move(part));
    }
    f.factors.emplace(r, std::move(parts));
  }
  return f;
}

DiagonalMap embedding_map(const FactorizationMap& f, const TowerModel& source,
                          const TowerModel& target) {
  if (source.base != f.outer || target.base != f.inner) {
    throw PreconditionError("towers are not built on the factorization's base words");
  }
  if (target.horizon < source.horizon) {
    throw PreconditionError("target horizon " + std::to_string(target.horizon) +
                            " is smaller than source horizon " + std::to_string(source.horizon));
  }
  std::map<int, int> level_of_dim;
  for (int l = 1; l <= source.model->level_count(); ++l) level_of_dim[source.model->dim(l)] = l;

  std::map<PointRef, std::vector<PointRef>> lists;
  for (const auto& p : target.model->free_points()) {
    const int n = target.model->dim(p.level);
    const std::string& z = p.point;
    const std::string r = z.substr(0, static_cast<std::size_t>(n));
    auto it = f.factors.find(r);
    if (it == f.factors.end()) {
      throw DomainError("target point " + to_string(p) + " does not start with an inner return word");
    }
    auto& list = lists[p];
    std::size_t offset = 0;
    for (const auto& factor : it->second) {
      const std::string y = z.substr(offset, factor.size() + static_cast<std::size_t>(source.horizon));
      const int d = static_cast<int>(factor.size());
      const PointRef q{level_of_dim.contains(d) ? level_of_dim[d] : 0, y};
      if (!source.model->contains(q)) {
        throw DomainError("shift by " + std::to_string(offset) + " of " + to_string(p) +
                          " has no source representative '" + y + "'");
      }
      list.push_back(q);
      offset += factor.size();
    }
  }
  return DiagonalMap(source.model, target.model, std::move(lists));
}

ComplexMatrix eval_generator_f(const WordLocalFunction& f, const std::string& word, int n) {
  if (static_cast<int>(word.size()) < n + f.arity) {
    throw DomainError("word '" + word + "' is too short for " + std::to_string(n) +
                      " shifts of an arity-" + std::to_string(f.arity) + " function");
  }
  std::vector<Complex> diag;
  diag.reserve(static_cast<std::size_t>(n));
  const std::string_view w(word);
  for (int s = 1; s <= n; ++s) {
    diag.push_back(f(w.substr(static_cast<std::size_t>(s), static_cast<std::size_t>(f.arity))));
  }
  return ComplexMatrix::diagonal(std::span<const Complex>(diag));
}

ComplexMatrix eval_generator_ug(const WordLocalFunction& g, const std::string& word, int n,
                                const std::string& vanish_on) {
  if (static_cast<int>(word.size()) < n - 1 + g.arity) {
    throw DomainError("word '" + word + "' is too short for the shifted generator");
  }
  DenseMatrix a = DenseMatrix::Zero(n, n);
  const std::string_view w(word);
  for (int k = 1; k < n; ++k) {
    const auto pos = static_cast<std::size_t>(k);
    const Complex v = g(w.substr(pos, static_cast<std::size_t>(g.arity)));
    if (v != 0.0 && pos + vanish_on.size() <= w.size() && w.substr(pos, vanish_on.size()) == vanish_on) {
      throw DomainError("generator '" + g.name + "' is nonzero at shift " + std::to_string(k) +
                        " of '" + word + "', where '" + vanish_on + "' occurs");
    }
    a(k, k - 1) = v;
  }
  return ComplexMatrix(std::move(a));
}

Element generator_f_element(const WordLocalFunction& f, const TowerModel& tower) {
  return Element::from_function(tower.model, [&](const PointRef& p) {
    return eval_generator_f(f, p.point, tower.model->dim(p.level));
  });
}

Element generator_ug_element(const WordLocalFunction& g, const TowerModel& tower) {
  return Element::from_function(tower.model, [&](const PointRef& p) {
    return eval_generator_ug(g, p.point, tower.model->dim(p.level), tower.base);
  });
}

std::string deeper_base(const Substitution& s, const std::string& base, std::size_t scan_length) {
  const std::string prefix = fixed_point_prefix(s, scan_length);
  if (prefix.compare(0, base.size(), base) != 0) {
    throw PreconditionError("'" + base + "' is not a prefix of the fixed point");
  }
  const int t0 = return_words(s, base, scan_length).return_times().front();
  for (std::size_t len = base.size() + 1; len < scan_length; ++len) {
    const std::string cand = prefix.substr(0, len);
    if (return_words(s, cand, scan_length).return_times().front() > t0) return cand;
  }
  throw DomainError("no deeper base word within the scan length");
}

}  // namespace dshlab
