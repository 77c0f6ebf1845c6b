// Word morphisms and multi-valued morphisms.

#ifndef SQFW_MORPHISM_HPP_
#define SQFW_MORPHISM_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sqfw/word.hpp"

namespace sqfw {

class Permutation {
 public:
  explicit Permutation(std::vector<Letter> mapping);

  static Permutation identity(Alphabet alphabet = {});
  // The cycle (0 1 2) on the ternary alphabet: 0 -> 1 -> 2 -> 0.
  static Permutation cycle012();

  Letter operator()(Letter a) const { return mapping_[a]; }
  Word operator()(const Word& w) const;
  Permutation power(unsigned k) const;
  std::size_t size() const { return mapping_.size(); }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Letter> mapping_;
};

class Morphism {
 public:
  // Domain is {0, ..., images.size()-1}; images are words over `target`.
  Morphism(std::vector<Word> images, Alphabet target, bool allow_empty = false);
  explicit Morphism(std::vector<Word> images, bool allow_empty = false);

  // Text format: one line per letter, "<letter> -> <image digits>", '#'
  // comments, blank lines ignored.
  static Morphism parse(std::string_view text);
  static Morphism from_file(const std::filesystem::path& path);
  std::string to_text() const;

  static Morphism identity(Alphabet alphabet = {});

  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  Alphabet domain() const { return domain_; }
  Alphabet target() const { return target_; }

  bool is_uniform() const;
  // Common image length; throws std::invalid_argument when not uniform.
  std::size_t uniform_length() const;
  std::size_t max_image_length() const;

  friend bool operator==(const Morphism& a, const Morphism& b) { return a.images_ == b.images_; }

 private:
  Alphabet domain_;
  Alphabet target_;
  std::vector<Word> images_;
};

class MultiMorphism {
 public:
  explicit MultiMorphism(std::vector<std::vector<Word>> alternatives);

  // Same line format as Morphism; a letter may repeat, one line per alternative.
  static MultiMorphism parse(std::string_view text);
  static MultiMorphism from_file(const std::filesystem::path& path);
  std::string to_text() const;

  const std::vector<Word>& alternatives(Letter a) const { return alternatives_.at(a); }
  const std::vector<std::vector<Word>>& all() const { return alternatives_; }
  Alphabet domain() const { return domain_; }
  Alphabet target() const { return target_; }

  // The ordinary morphism picking alternative choice[a] for each letter.
  Morphism select(std::span<const std::size_t> choice) const;

  friend bool operator==(const MultiMorphism& a, const MultiMorphism& b) {
    return a.alternatives_ == b.alternatives_;
  }

 private:
  Alphabet domain_;
  Alphabet target_;
  std::vector<std::vector<Word>> alternatives_;
};

Word apply(const Morphism& h, const Word& w);
WordStream apply(const Morphism& h, const WordStream& w);

// h^omega(a). Requires h(a) to start with a and |h(a)| >= 2.
WordStream fixed_point(const Morphism& h, Letter a);

// (g o h)(a) = g(h(a))
Morphism compose(const Morphism& g, const Morphism& h);

// h_p(a) = [h(a)]_p; requires p to divide every image length.
Morphism subsample_morphism(const Morphism& h, std::size_t p);

// a -> c^{-1} h(a) c; requires every image to begin with c.
Morphism conjugate(const Morphism& h, Letter c);

// h(0) = image0, h(1) = pi(h(0)), h(2) = pi(h(1)).
Morphism cyclic_shift_morphism(const Word& image0, const Permutation& pi);
MultiMorphism cyclic_shift_multimorphism(const std::vector<Word>& alternatives0,
                                         const Permutation& pi);

// Length of the longest common prefix of all letter images.
std::size_t lcp_of(const Morphism& h);
std::size_t longest_common_prefix(const std::vector<Word>& words);
std::size_t longest_common_suffix(const std::vector<Word>& words);

// 0 -> 012, 1 -> 02, 2 -> 1
const Morphism& tau();
// tau o tau o tau, checked against the listed images on first use.
const Morphism& tau_cubed();
// tau^omega(0) = 012021012102012...
WordStream vtm();

}  // namespace sqfw

#endif  // SQFW_MORPHISM_HPP_
