#include <gtest/gtest.h>

#include <set>

#include "dshlab/dynamics.hpp"
#include "dshlab/errors.hpp"
#include "dshlab/pipeline.hpp"

namespace dshlab {
namespace {

// Iterates 0 -> 01, 1 -> 0 on a string until it is long enough.
std::string fibonacci_prefix(std::size_t length) {
  std::string w = "0";
  while (w.size() < length) {
    std::string next;
    for (char c : w) next += c == '0' ? "01" : "0";
    w = next;
  }
  return w.substr(0, length);
}

// Words between consecutive occurrences of base, found by direct search.
std::set<std::string> return_word_oracle(const std::string& text, const std::string& base) {
  std::vector<std::size_t> hits;
  for (std::size_t pos = text.find(base); pos != std::string::npos; pos = text.find(base, pos + 1)) hits.push_back(pos);
  std::set<std::string> words;
  for (std::size_t i = 0; i + 1 < hits.size(); ++i) words.insert(text.substr(hits[i], hits[i + 1] - hits[i]));
  return words;
}

TEST(Substitution, FibonacciFixedPoint) {
  const auto s = Substitution::fibonacci();
  EXPECT_EQ(fixed_point_prefix(s, 200), fibonacci_prefix(200));
  EXPECT_TRUE(s.is_primitive());
  EXPECT_TRUE(Substitution::thue_morse().is_primitive());
  EXPECT_EQ(s.apply("010"), "01001");
}

TEST(Substitution, NonPrimitiveDetected) {
  const Substitution s({'a', 'b'}, {{'a', "ab"}, {'b', "b"}});
  EXPECT_FALSE(s.is_primitive());
}

TEST(ReturnWords, MatchBruteForceScan) {
  const auto s = Substitution::fibonacci();
  const std::string text = fibonacci_prefix(20000);
  for (const std::string base : {"0", "01", "010", "0100101", "1"}) {
    const auto rw = return_words(s, base, 10000);
    const auto oracle = return_word_oracle(text, base);
    EXPECT_EQ(std::set<std::string>(rw.words.begin(), rw.words.end()), oracle) << base;
  }
  const auto rw = return_words(s, "0", 10000);
  EXPECT_EQ(rw.words, (std::vector<std::string>{"0", "01"}));
  EXPECT_EQ(rw.return_times(), (std::vector<int>{1, 2}));
}

TEST(ReturnWords, WordOutsideLanguage) {
  EXPECT_THROW(return_words(Substitution::fibonacci(), "11", 10000), DomainError);
}

TEST(TowerModel, FibonacciBaseZero) {
  TowerOptions options;
  options.horizon = 3;
  const TowerModel t = build_tower_model(Substitution::fibonacci(), "0", options);
  ASSERT_EQ(t.model->level_count(), 2);
  EXPECT_EQ(t.model->dim(1), 1);
  EXPECT_EQ(t.model->dim(2), 2);
  EXPECT_TRUE(validate_model(*t.model).ok());
  const std::string text = fibonacci_prefix(20000);
  for (const auto& p : t.model->free_points()) {
    EXPECT_EQ(p.point.size(), static_cast<std::size_t>(t.model->dim(p.level) + 3));
    EXPECT_NE(text.find(p.point), std::string::npos) << p.point;
  }
  options.max_points_per_level = 1;
  const TowerModel capped = build_tower_model(Substitution::fibonacci(), "0", options);
  for (int l = 1; l <= capped.model->level_count(); ++l) EXPECT_EQ(capped.model->free_points(l).size(), 1u);
}

TEST(Factorization, InnerWordsSplitIntoOuterWords) {
  const auto s = Substitution::fibonacci();
  const auto f = factorize_returns(s, "0", "01");
  EXPECT_EQ(f.factors.at("01"), (std::vector<std::string>{"01"}));
  EXPECT_EQ(f.factors.at("010"), (std::vector<std::string>{"01", "0"}));
  EXPECT_EQ(f.offsets("010"), (std::vector<int>{0, 2}));
  EXPECT_THROW(factorize_returns(s, "01", "0"), PreconditionError);
}

TEST(Embedding, GeneratorsAreCarriedOver) {
  const auto s = Substitution::fibonacci();
  TowerOptions options;
  options.horizon = 2;
  const TowerModel src = build_tower_model(s, "0", options);
  const TowerModel dst = build_tower_model(s, "01", options);
  const DiagonalMap d = embedding_map(factorize_returns(s, "0", "01"), src, dst);
  const WordLocalFunction f{"pair", 2, [](std::string_view w) { return Complex(w == "10" ? 3.0 : -1.0, 0.5); }};
  const Element lhs = apply_diagonal_map(d, generator_f_element(f, src));
  const Element rhs = generator_f_element(f, dst);
  for (const auto& p : dst.model->free_points()) EXPECT_TRUE(lhs.value(p).approx_equal(rhs.value(p))) << to_string(p);
}

TEST(Generators, UgVanishingContract) {
  const WordLocalFunction g{"ones", 1, [](std::string_view w) { return Complex(w[0] == '1'); }};
  const ComplexMatrix m = eval_generator_ug(g, "0100", 3, "0");
  EXPECT_EQ(m(1, 0), Complex(1.0));
  EXPECT_EQ(m(2, 1), Complex(0.0));
  const WordLocalFunction bad{"zeros", 1, [](std::string_view w) { return Complex(w[0] == '0'); }};
  EXPECT_THROW(eval_generator_ug(bad, "0100", 3, "0"), DomainError);
  const ComplexMatrix f = eval_generator_f(g, "0100", 3);
  EXPECT_EQ(f(0, 0), Complex(1.0));
  EXPECT_EQ(f(1, 1), Complex(0.0));
}

TEST(Deepening, FibonacciChainGrows) {
  const auto s = Substitution::fibonacci();
  const auto bases = deepening_bases(s, "0", 5);
  ASSERT_EQ(bases.size(), 5u);
  for (std::size_t i = 1; i < bases.size(); ++i) {
    EXPECT_EQ(bases[i].substr(0, bases[i - 1].size()), bases[i - 1]);
    EXPECT_LT(return_words(s, bases[i - 1], 10000).return_times().front(),
              return_words(s, bases[i], 10000).return_times().front());
  }
}

}  // namespace
}  // namespace dshlab
