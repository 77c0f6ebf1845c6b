// Base-2 automata with output (msd-first) and the bounded checks built on vtm.

#ifndef SQFW_AUTOMATIC_HPP_
#define SQFW_AUTOMATIC_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqfw/word.hpp"

namespace sqfw {

// Deterministic finite automaton with output reading the binary expansion of n
// most significant digit first. n = 0 reads the empty string.
class Dfao {
 public:
  using State = std::uint32_t;

  Dfao(State initial, std::vector<std::array<State, 2>> transitions, std::vector<Letter> outputs);

  // Header "states N init I", then "S d -> S'" and "out S -> letter" lines.
  static Dfao parse(std::string_view text);
  std::string to_text() const;

  std::size_t state_count() const { return transitions_.size(); }
  State initial() const { return initial_; }
  State next(State s, unsigned digit) const { return transitions_[s][digit]; }
  Letter output(State s) const { return outputs_[s]; }

  State state_after(std::uint64_t n) const;
  Letter eval(std::uint64_t n) const { return outputs_[state_after(n)]; }

  // Moore-minimized copy restricted to reachable states, states renumbered in
  // breadth-first order from the initial state.
  Dfao minimized() const;

 private:
  State initial_;
  std::vector<std::array<State, 2>> transitions_;
  std::vector<Letter> outputs_;
};

inline Letter dfao_eval(const Dfao& a, std::uint64_t n) { return a.eval(n); }

struct SynthesisOptions {
  std::size_t compare_len = std::size_t{1} << 16;
  std::size_t state_cap = 256;
};

// Builds the 2-kernel closure {n -> w[2^e n + r]} (elements identified by
// their first compare_len letters), which is the lsd-first automaton, and
// converts it to a minimal msd-first DFAO. Throws ResourceLimitError when the
// closure exceeds state_cap.
Dfao kernel_synthesize(const WordStream& w, const SynthesisOptions& options = {});

// Number of 2-kernel classes found by kernel_synthesize before conversion.
std::size_t kernel_size(const WordStream& w, const SynthesisOptions& options = {});

bool dfao_equiv_prefix(const Dfao& a, const WordStream& w, std::size_t n);

WordStream dfao_stream(const Dfao& a, Alphabet alphabet = {});

// Generic per-key least-witness report.
struct WitnessReport {
  struct Entry {
    std::size_t key = 0;
    std::optional<std::size_t> witness;
  };
  std::vector<Entry> entries;
  bool complete() const;
  std::optional<std::size_t> first_missing() const;
};

// For 2 <= k <= max_gap: least i <= bound with w[i] = w[i+k] in {0, 2}.
WitnessReport same_first_last_bounded(const WordStream& w, std::size_t max_gap, std::size_t bound);

// Least i <= bound, i = 0 mod k, with w[i] = w[i+k] in {0, 2}.
std::optional<std::size_t> same_first_last_aligned(const WordStream& w, std::size_t k,
                                                    std::size_t bound);

// For each residue r mod k: least occurrence position = r (mod k) of u in w
// starting below bound. Requires k odd.
WitnessReport residue_coverage(const WordStream& w, const Word& u, std::size_t k, std::size_t bound);

struct DoublingReport {
  std::size_t bound = 0;
  std::optional<std::size_t> first_violation;  // least i with w[i] in {0,2}, w[2i] != w[i]
  bool clean() const { return !first_violation; }
};

DoublingReport doubling_check(const WordStream& w, std::size_t bound);

// For each 2 <= k <= max_gap: least j <= bound with w[jk] = w[(j+1)k] in {0, 2},
// i.e. the subsample [w]_k contains 00 or 22.
WitnessReport subsample_00_or_22(const WordStream& w, std::size_t max_gap, std::size_t bound);

}  // namespace sqfw

#endif  // SQFW_AUTOMATIC_HPP_
