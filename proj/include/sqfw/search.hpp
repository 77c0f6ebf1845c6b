// Backtracking over squarefree words under positional and subsample constraints,
// plus the lcp experiments for uniform morphisms.

#ifndef SQFW_SEARCH_HPP_
#define SQFW_SEARCH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sqfw/morphism.hpp"
#include "sqfw/word.hpp"

namespace sqfw {

// Resolves the stream names accepted by constraint files and the CLI: vtm,
// zero (0^omega), alt01 ((01)^omega), tm (binary Thue-Morse). Anything else
// must be a digit string and is repeated periodically.
WordStream named_stream(std::string_view name_or_digits, Alphabet alphabet = {});

class Constraint {
 public:
  explicit Constraint(Alphabet alphabet = {}) : alphabet_(alphabet) {}

  // Throws std::invalid_argument if i is already fixed to another letter.
  Constraint& fix(std::size_t i, Letter a);
  // w[offset + i*p] = v[i] for all i.
  Constraint& fix_mod(std::size_t p, std::size_t offset, WordStream v);
  // [w]_p must be squarefree.
  Constraint& require_squarefree_subsample(std::size_t p);

  // Lines: "fix <index> <letter>", "fixmod <p> <offset> <stream-name-or-digits>",
  // "sqfmod <p>". '#' starts a comment.
  static Constraint parse(std::string_view text, Alphabet alphabet = {});

  std::optional<Letter> fixed_at(std::size_t i) const;
  // fixed_at for 0..n-1, -1 where free. Throws std::invalid_argument when two
  // rules disagree on some position.
  std::vector<std::int8_t> materialize(std::size_t n) const;

  const std::set<std::size_t>& sqf_moduli() const { return sqf_moduli_; }
  Alphabet alphabet() const { return alphabet_; }

  // Independent re-validation: w squarefree, every [w]_p squarefree, and
  // every fixed position below |w| honoured.
  bool satisfied_by(const Word& w) const;

 private:
  struct ModRule {
    std::size_t p;
    std::size_t offset;
    WordStream v;
  };
  Alphabet alphabet_;
  std::map<std::size_t, Letter> fixed_;
  std::vector<ModRule> mod_rules_;
  std::set<std::size_t> sqf_moduli_;
};

enum class SearchKind { found, exhausted, budget_exhausted };
std::string to_string(SearchKind k);

struct SearchOutcome {
  SearchKind kind = SearchKind::exhausted;
  // The found word, or the first deepest word reached.
  Word word;
  // Longest constrained squarefree word seen (exact when exhausted).
  std::size_t max_length = 0;
  // Exhaustive mode: words of max_length in lexicographic order, up to
  // maximal_words_limit of them; maximal_count counts all.
  std::vector<Word> maximal_words;
  std::size_t maximal_count = 0;
  std::uint64_t nodes_expanded = 0;
  // Deepest length reached after each million nodes.
  std::vector<std::size_t> depth_profile;
  std::string note;
};

// Incremental square detection for a growing word. push() refuses a letter
// that would create a square ending at the new last position.
class SquareTracker {
 public:
  explicit SquareTracker(std::size_t memory_cap_bytes = std::size_t{1} << 26);

  bool push(Letter a);
  void pop();
  std::size_t size() const { return word_.size(); }
  const std::vector<Letter>& word() const { return word_; }

 private:
  void recompute_top();

  std::vector<Letter> word_;
  // runs_[n-1][j], j < n-1: length of the longest common suffix of
  // word[0, n) and word[0, j]. Levels beyond the memory cap live only in top_
  // and are recomputed on pop.
  std::vector<std::vector<std::uint32_t>> runs_;
  std::vector<std::uint32_t> top_;
  std::vector<std::uint32_t> scratch_;
  std::size_t stored_ = 0;  // elements held in runs_
  std::size_t stored_levels_ = 0;
  std::size_t memory_cap_;
};

constexpr std::size_t maximal_words_limit = 1 << 16;

// Depth-first, letters tried in ascending order. Nodes are successful
// extensions; the budget caps them.
SearchOutcome backtrack(const Constraint& c, std::size_t target_len, std::uint64_t budget);

// Explores the whole tree below cap. If some word reaches cap, the outcome
// is budget_exhausted with a note instead of a maximum.
SearchOutcome exhaustive_max(const Constraint& c, std::size_t cap,
                             std::uint64_t budget = std::uint64_t{1} << 40);

// Deepest word with [w]_p and [w]_q squarefree. max_length bounds the depth
// so the probe cannot run away when it does not get stuck.
SearchOutcome pq_probe(std::size_t p, std::size_t q, std::uint64_t budget,
                       std::size_t max_length = 20000);

struct LcpBoundResult {
  bool holds = true;  // no flank pair admits `group` middles
  std::size_t pairs_checked = 0;
  std::size_t solution_count = 0;
  // (p, s, middles u with p u s squarefree) for the first few solutions.
  struct Solution {
    Word prefix;
    Word suffix;
    std::vector<Word> middles;
  };
  std::vector<Solution> examples;
};

// For every pair of squarefree flanks p, s of length flank_len, counts the
// squarefree middles u of length middle_len with p u s squarefree; a pair
// with at least `group` middles is a solution.
LcpBoundResult lcp_bound_search(std::size_t middle_len, std::size_t flank_len, std::size_t group);

// Middles of length 5, flanks of length 8, triples.
bool lcp_bound_check();

// Flanks p, s of length flank_len with p u s squarefree for every u in
// middles. Throws std::invalid_argument unless the middles are distinct and of
// equal length.
std::optional<std::pair<Word, Word>> find_common_flanks(const std::vector<Word>& middles,
                                                        std::size_t flank_len);

struct LcpSearchResult {
  std::optional<Morphism> morphism;
  std::uint64_t nodes_expanded = 0;
  bool budget_exhausted = false;
};

// The acceptance predicate of lcp_search, applied independently.
bool lcp_witness_valid(const Morphism& h, std::size_t n, std::size_t target_lcp);

// n-uniform morphism with lcp exactly target_lcp passing uniform_sqf_test.
// Requires n >= 11 and target_lcp < n.
LcpSearchResult lcp_search(std::size_t n, std::size_t target_lcp, std::uint64_t budget);

// Insert 0 before the first letter and after every p-1 letters of ternary
// (shifted to 1,2,3); the result is over four letters.
Word quaternary_interleave(const Word& ternary, std::size_t p);

}  // namespace sqfw

#endif  // SQFW_SEARCH_HPP_
