// The full claim report behind `sqfw verify-paper`.

#ifndef SQFW_PAPER_CHECKS_HPP_
#define SQFW_PAPER_CHECKS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include "sqfw/catalog.hpp"
#include "sqfw/report.hpp"

namespace sqfw {

enum class Scope { fast, all };

struct PaperOptions {
  Scope scope = Scope::fast;
  std::uint64_t seed = 0;
  std::filesystem::path asset_dir = default_asset_dir();
  // Called with each claim id as it starts; may be empty.
  std::function<void(const std::string&)> progress;
};

// Claims sorted by id. Failures are report entries, never exceptions.
Report verify_paper(const PaperOptions& options);

// The three maximal words for [w]_5 = 0^omega, as printed.
const std::vector<Word>& p5_maximal_words();

// words together with their images under 1 <-> 2, sorted.
std::vector<Word> with_letter_exchange(const std::vector<Word>& words);

// One seeded embedding trial: random gaps in [30, 60], random ternary v of
// length v_len. Returns (verified, description).
std::pair<bool, std::string> random_embedding_trial(std::uint64_t seed, std::size_t v_len);

}  // namespace sqfw

#endif  // SQFW_PAPER_CHECKS_HPP_
