// Forcing an arbitrary ternary word onto a sparse position sequence of a
// squarefree word, by swapping middle blocks of the multi-valued morphism.

#ifndef SQFW_EMBED_HPP_
#define SQFW_EMBED_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sqfw/morphism.hpp"
#include "sqfw/word.hpp"

namespace sqfw {

constexpr std::size_t min_embed_gap = 30;

class PositionSpec {
 public:
  // p0, p0 + step, p0 + 2*step, ...; step >= 30.
  static PositionSpec arithmetic(std::size_t p0, std::size_t step);
  // Strictly increasing, consecutive gaps >= 30.
  static PositionSpec list(std::vector<std::size_t> positions);
  // "arith:p0,step" or a list of indices separated by spaces, commas or newlines.
  static PositionSpec parse(std::string_view text);
  static PositionSpec from_file(const std::filesystem::path& path);

  std::size_t at(std::size_t i) const;
  std::optional<std::size_t> size() const;  // nullopt when unbounded
  // All positions < bound, in order.
  std::vector<std::size_t> below(std::size_t bound) const;

 private:
  std::function<std::size_t(std::size_t)> gen_;
  std::optional<std::size_t> size_;
};

struct Swap {
  std::size_t image_index = 0;  // index into the preimage
  unsigned old_alternative = 0;
  unsigned new_alternative = 0;
  unsigned d = 0;               // letters removed from the middle block
  std::size_t position = 0;     // the position being corrected
};

struct EmbedResult {
  Word word;
  unsigned rotation = 0;  // j in pi^j applied to vtm
  std::vector<Swap> swaps;
};

class Embedder {
 public:
  // Validates the image structure: four alternatives per letter of lengths
  // 23..26, a shared 12-letter prefix and 9-letter suffix, and
  // h(pi(a)) = pi(h(a)).
  explicit Embedder(MultiMorphism h);

  // The multi_embed asset from the default asset directory.
  static const Embedder& standard();

  const MultiMorphism& morphism() const { return h_; }

  // Prefix of the all-26 image of vtm.
  Word base_word(std::size_t len) const;

  // Squarefree w of length len with w[p_i] = v[i] for every p_i < len.
  EmbedResult force_subsequence(const PositionSpec& spec, const WordStream& v, std::size_t len) const;

 private:
  MultiMorphism h_;
};

// True iff w is squarefree and w[p_i] = v[i] for every p_i < |w|.
bool verify_embedding(const Word& w, const PositionSpec& spec, const WordStream& v);

}  // namespace sqfw

#endif  // SQFW_EMBED_HPP_
