// Finite words, lazily extended infinite words, and square detection.
//
// Letters are small unsigned integers 0..size-1 stored contiguously. A Word is
// an ordinary value type; a WordStream is a shared handle onto a prefix cache
// that a generator extends on demand.

#ifndef SQFW_WORD_HPP_
#define SQFW_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqfw {

using Letter = std::uint8_t;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  constexpr Alphabet() = default;
  explicit Alphabet(unsigned size);

  static constexpr Alphabet ternary() { return Alphabet{}; }

  constexpr unsigned size() const { return size_; }
  constexpr bool contains(unsigned letter) const { return letter < size_; }

  friend constexpr bool operator==(Alphabet, Alphabet) = default;

 private:
  unsigned size_ = 3;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters, Alphabet alphabet = {});
  Word(std::initializer_list<Letter> letters, Alphabet alphabet = {});

  // Parses an ASCII digit string such as "012021".
  static Word parse(std::string_view digits, Alphabet alphabet = {});

  std::string str() const;

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Alphabet alphabet() const { return alphabet_; }

  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word slice(std::size_t pos, std::size_t len) const;
  bool starts_with(const Word& prefix) const;
  bool ends_with(const Word& suffix) const;

  void push_back(Letter a);
  Word& operator+=(const Word& other);
  friend Word operator+(Word lhs, const Word& rhs) {
    lhs += rhs;
    return lhs;
  }

  // Comparison is on letters only; shortlex is not used anywhere.
  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
  Alphabet alphabet_;
};

namespace literals {
inline Word operator""_w(const char* s, std::size_t n) {
  return Word::parse(std::string_view(s, n));
}
}  // namespace literals

// An occurrence of the square w[start, start+period) w[start+period, start+2*period).
struct Square {
  std::size_t start = 0;
  std::size_t period = 0;
  std::size_t end() const { return start + 2 * period; }
  friend bool operator==(const Square&, const Square&) = default;
};

// Square with the smallest end index, ties broken by smallest period.
std::optional<Square> find_square(std::span<const Letter> w);
inline std::optional<Square> find_square(const Word& w) {
  return find_square(w.letters());
}

// Reference O(n^2) centered scan with the same tie-breaking as find_square.
std::optional<Square> find_square_naive(std::span<const Letter> w);

bool is_squarefree(std::span<const Letter> w);
inline bool is_squarefree(const Word& w) { return is_squarefree(w.letters()); }

// Smallest p such that the last 2p letters form a square. If w minus its last
// letter is squarefree, then w is squarefree iff this returns nullopt.
std::optional<std::size_t> square_ending_at_end(std::span<const Letter> w);
inline std::optional<std::size_t> square_ending_at_end(const Word& w) {
  return square_ending_at_end(w.letters());
}

class WordStream {
 public:
  // Appends letters to `cache` until cache.size() >= need.
  using Extender = std::function<void(std::vector<Letter>& cache, std::size_t need)>;

  WordStream(Alphabet alphabet, Extender extender);

  static WordStream from_function(Alphabet alphabet, std::function<Letter(std::size_t)> f);
  static WordStream constant(Letter a, Alphabet alphabet = {});
  // period^omega
  static WordStream periodic(const Word& period);

  Letter at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  std::size_t cached() const;
  Alphabet alphabet() const { return alphabet_; }

 private:
  struct State;
  // Returns a copy of the first n letters, extending under the lock.
  std::vector<Letter> materialize(std::size_t n) const;

  Alphabet alphabet_;
  std::shared_ptr<State> state_;
};

// "n:digits"
std::string serialize_prefix(const WordStream& w, std::size_t n);
Word parse_serialized_prefix(std::string_view text, Alphabet alphabet = {});

// Output letter i is w[offset + i*p]; a finite word is truncated at its last
// in-range index.
Word subsample(const Word& w, std::size_t p, std::size_t offset = 0);
WordStream subsample(const WordStream& w, std::size_t p, std::size_t offset = 0);

using IndexSequence = std::function<std::size_t(std::size_t)>;

// Output letter i is w[positions(i)]. Strict monotonicity is checked as the
// stream materializes.
WordStream subsequence(const WordStream& w, IndexSequence positions);
Word subsequence(const Word& w, std::span<const std::size_t> positions);

// All squarefree words of length n in lexicographic order. Throws
// ResourceLimitError once more than max_words words would be produced.
std::vector<Word> enumerate_squarefree(Alphabet alphabet, std::size_t n,
                                       std::size_t max_words = std::size_t{1} << 24);

std::set<Word> factors(const Word& w, std::size_t n);

}  // namespace sqfw

#endif  // SQFW_WORD_HPP_
