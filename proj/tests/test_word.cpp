#include <random>
#include <set>

#include "doctest.h"
#include "sqfw/word.hpp"

using namespace sqfw;
using namespace sqfw::literals;

namespace {

// Brute force: any i, p with w[i, i+p) == w[i+p, i+2p).
bool has_square_oracle(const std::vector<Letter>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t p = 1; i + 2 * p <= w.size(); ++p) {
      if (std::equal(w.begin() + i, w.begin() + i + p, w.begin() + i + p)) return true;
    }
  }
  return false;
}

std::vector<std::vector<Letter>> all_words(unsigned k, std::size_t n) {
  std::vector<std::vector<Letter>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : out) {
      for (Letter a = 0; a < k; ++a) {
        auto x = w;
        x.push_back(a);
        next.push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("parse and print") {
  const Word w = "012021"_w;
  CHECK(w.size() == 6);
  CHECK(w.str() == "012021");
  CHECK(w[3] == 0);
  CHECK(Word::parse("").empty());
  CHECK_THROWS_AS(Word::parse("0123"), ParseError);
  CHECK_THROWS_AS(Word::parse("01a"), ParseError);
  CHECK(Word::parse("0123", Alphabet(4)).size() == 4);
  CHECK_THROWS_AS(Alphabet(5), std::invalid_argument);
}

TEST_CASE("word operations") {
  const Word w = "0120210"_w;
  CHECK(w.slice(2, 3) == "202"_w);
  CHECK(w.starts_with("012"_w));
  CHECK(w.ends_with("210"_w));
  CHECK_FALSE(w.ends_with("0120"_w));
  CHECK(("01"_w + "2"_w) == "012"_w);
  CHECK("01"_w < "02"_w);
}

TEST_CASE("find_square on small examples") {
  CHECK_FALSE(find_square("012021012102012"_w));
  const auto s = find_square("0120101"_w);
  REQUIRE(s);
  CHECK(s->start == 3);
  CHECK(s->period == 2);
  CHECK(find_square("00"_w) == Square{0, 1});
  CHECK_FALSE(find_square(Word{}));
  CHECK(square_ending_at_end("0121"_w) == std::nullopt);
  CHECK(square_ending_at_end("01201"_w) == std::nullopt);
  CHECK(square_ending_at_end("012012"_w) == 3u);
}

TEST_CASE("find_square agrees with a brute-force oracle on all ternary words up to length 10") {
  for (std::size_t n = 0; n <= 10; ++n) {
    for (const auto& w : all_words(3, n)) {
      const auto fast = find_square(std::span<const Letter>(w));
      const auto naive = find_square_naive(std::span<const Letter>(w));
      REQUIRE(fast == naive);
      REQUIRE(fast.has_value() == has_square_oracle(w));
    }
  }
}

TEST_CASE("find_square agrees with the naive scan on long random and squarefree-ish words") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 50 + rng() % 600;
    std::vector<Letter> w;
    // Greedy squarefree growth with occasional forced defects.
    while (w.size() < n) {
      Letter a = static_cast<Letter>(rng() % 3);
      w.push_back(a);
      if (square_ending_at_end(std::span<const Letter>(w)) && rng() % 8 != 0) w.pop_back();
    }
    const auto fast = find_square(std::span<const Letter>(w));
    const auto naive = find_square_naive(std::span<const Letter>(w));
    REQUIRE(fast == naive);
  }
}

TEST_CASE("enumerate_squarefree matches filtered brute force") {
  for (std::size_t n = 0; n <= 10; ++n) {
    std::vector<Word> oracle;
    for (const auto& w : all_words(3, n)) {
      if (!has_square_oracle(w)) oracle.emplace_back(w);
    }
    const auto got = enumerate_squarefree(Alphabet::ternary(), n);
    CHECK(got == oracle);
  }
  CHECK(enumerate_squarefree(Alphabet::ternary(), 5).size() == 30);
  CHECK(enumerate_squarefree(Alphabet(2), 4).empty());
  CHECK_THROWS_AS(enumerate_squarefree(Alphabet::ternary(), 30, 100), ResourceLimitError);
}

TEST_CASE("word streams") {
  const auto zero = WordStream::constant(0);
  CHECK(zero.prefix(5) == "00000"_w);
  const auto per = WordStream::periodic("012"_w);
  CHECK(per.at(7) == 1);
  CHECK(per.prefix(7) == "0120120"_w);
  const auto sq = WordStream::from_function(Alphabet::ternary(), [](std::size_t i) {
    return static_cast<Letter>(i % 3 == 0 ? 0 : 1);
  });
  CHECK(sq.prefix(6) == "011011"_w);
  CHECK(sq.cached() >= 6);
  CHECK(serialize_prefix(per, 4) == "4:0120");
  CHECK(parse_serialized_prefix("4:0120") == "0120"_w);
  CHECK_THROWS_AS(parse_serialized_prefix("5:0120"), ParseError);
  CHECK_THROWS_AS(parse_serialized_prefix("x:0"), ParseError);
}

TEST_CASE("subsample and subsequence") {
  const Word w = "0120210121"_w;
  CHECK(subsample(w, 2) == "02202"_w);
  CHECK(subsample(w, 3, 1) == "121"_w);
  CHECK(subsample(w, 1) == w);
  CHECK(subsample(WordStream::periodic("012"_w), 3).prefix(4) == "0000"_w);
  const std::vector<std::size_t> pos{0, 3, 4};
  CHECK(subsequence(w, pos) == "002"_w);
  const auto s = subsequence(WordStream::periodic("012"_w), [](std::size_t i) { return 2 * i + 1; });
  CHECK(s.prefix(3) == "102"_w);
  const auto bad = subsequence(WordStream::periodic("012"_w), [](std::size_t) { return std::size_t{4}; });
  CHECK_THROWS(bad.prefix(3));
}

TEST_CASE("factors") {
  const auto f = factors("0120"_w, 2);
  CHECK(f == std::set<Word>{"01"_w, "12"_w, "20"_w});
  CHECK_THROWS_AS(factors("01"_w, 3), std::invalid_argument);
}
