#pragma once

// Substitution subshifts, first-return words to cylinders, and the tower
// models and embeddings they generate.
//
// A point of a tower model is a finite word: a return word of length n_i
// followed by H further symbols (the horizon). Shifting a point drops
// symbols from the front, so every generator evaluation reads inside the
// stored word.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dshlab/dsh_model.hpp"

namespace dshlab {

class Substitution {
 public:
  /// Symbols are single characters. `seed` defaults to the first symbol a
  /// whose image starts with a.
  Substitution(std::vector<char> alphabet, std::map<char, std::string> rules,
               std::optional<char> seed = std::nullopt);

  static Substitution fibonacci();
  static Substitution thue_morse();

  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::map<char, std::string>& rules() const { return rules_; }
  char seed() const { return seed_; }

  std::string apply(std::string_view word) const;
  /// Some power of the incidence matrix is entrywise positive.
  bool is_primitive() const;

 private:
  std::vector<char> alphabet_;
  std::map<char, std::string> rules_;
  char seed_;
};

/// First `length` symbols of the fixed point grown from the seed.
std::string fixed_point_prefix(const Substitution& s, std::size_t length);

struct ReturnWords {
  std::string base;
  /// Sorted by length, then lexicographically.
  std::vector<std::string> words;
  std::size_t scan_length = 0;
  /// Occurrences of the base word seen in the longer of the two scans.
  std::size_t occurrences = 0;

  std::vector<int> return_times() const;
};

/// Return words read between consecutive occurrences of `base` in one prefix.
std::vector<std::string> scan_return_words(std::string_view prefix, std::string_view base);

/// Return words to [base]; the set must agree between scans of length
/// `scan_length` and 2 * `scan_length`.
ReturnWords return_words(const Substitution& s, const std::string& base, std::size_t scan_length);

struct TowerModel {
  std::string base;
  std::vector<std::string> return_words;
  int horizon = 0;
  ModelPtr model;

  /// Stored word of a point (the point id).
  const std::string& word(const PointRef& p) const { return p.point; }
};

struct TowerOptions {
  int horizon = 1;
  /// 0 keeps every distinct word found.
  int max_points_per_level = 0;
  std::size_t scan_length = 10000;
};

TowerModel build_tower_model(const Substitution& s, const std::string& base,
                             const TowerOptions& options);

struct FactorizationMap {
  std::string outer;
  std::string inner;
  /// Inner return word -> its factors as outer return words.
  std::map<std::string, std::vector<std::string>> factors;

  /// Partial sums S_0 = 0, S_1, ..., S_{s-1} of the factor lengths.
  std::vector<int> offsets(const std::string& inner_word) const;
};

FactorizationMap factorize_returns(const Substitution& s, const std::string& outer,
                                   const std::string& inner, std::size_t scan_length = 10000);

/// Sends each target point z to the source points representing
/// z, shift^{S_1}(z), ..., shift^{S_{s-1}}(z).
DiagonalMap embedding_map(const FactorizationMap& f, const TowerModel& source,
                          const TowerModel& target);

/// A scalar function of the first `arity` symbols of a word.
struct WordLocalFunction {
  std::string name;
  int arity = 1;
  std::function<Complex(std::string_view)> fn;

  Complex operator()(std::string_view window) const { return fn(window); }
};

/// diag(f(shift^1 z), ..., f(shift^n z)).
ComplexMatrix eval_generator_f(const WordLocalFunction& f, const std::string& word, int n);
/// Subdiagonal matrix with (k+1, k) entry g(shift^k z). `g` must vanish on
/// windows read at positions where `vanish_on` occurs.
ComplexMatrix eval_generator_ug(const WordLocalFunction& g, const std::string& word, int n,
                                const std::string& vanish_on);

Element generator_f_element(const WordLocalFunction& f, const TowerModel& tower);
Element generator_ug_element(const WordLocalFunction& g, const TowerModel& tower);

/// Shortest prefix of the fixed point longer than `base` whose minimal
/// return time exceeds that of `base`.
std::string deeper_base(const Substitution& s, const std::string& base,
                        std::size_t scan_length = 10000);

}  // namespace dshlab
