#include "sqfw/search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sqfw/verify.hpp"

namespace sqfw {

WordStream named_stream(std::string_view name, Alphabet alphabet) {
  if (name == "vtm") return vtm();
  if (name == "zero") return WordStream::constant(0, alphabet);
  if (name == "alt01") return WordStream::periodic(Word::parse("01", alphabet));
  if (name == "tm") {
    return WordStream::from_function(alphabet, [](std::size_t i) {
      return static_cast<Letter>(std::popcount(i) & 1);
    });
  }
  if (name.empty()) throw ParseError("empty stream name");
  return WordStream::periodic(Word::parse(name, alphabet));
}

Constraint& Constraint::fix(std::size_t i, Letter a) {
  if (!alphabet_.contains(a)) throw std::invalid_argument("letter outside the alphabet");
  auto [it, inserted] = fixed_.emplace(i, a);
  if (!inserted && it->second != a) {
    throw std::invalid_argument("position " + std::to_string(i) + " fixed to two letters");
  }
  return *this;
}

Constraint& Constraint::fix_mod(std::size_t p, std::size_t offset, WordStream v) {
  if (p == 0) throw std::invalid_argument("modulus must be positive");
  mod_rules_.push_back({p, offset, std::move(v)});
  return *this;
}

Constraint& Constraint::require_squarefree_subsample(std::size_t p) {
  if (p == 0) throw std::invalid_argument("modulus must be positive");
  sqf_moduli_.insert(p);
  return *this;
}

namespace {

std::size_t parse_size(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty() || tok[0] == '-') {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + tok + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

Constraint Constraint::parse(std::string_view text, Alphabet alphabet) {
  Constraint c(alphabet);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto bad = [&](const std::string& why) {
      return ParseError("line " + std::to_string(lineno) + ": " + why);
    };
    try {
      if (tok[0] == "fix" && tok.size() == 3) {
        const auto letter = parse_size(tok[2], lineno);
        if (!alphabet.contains(static_cast<unsigned>(letter))) throw bad("letter outside the alphabet");
        c.fix(parse_size(tok[1], lineno), static_cast<Letter>(letter));
      } else if (tok[0] == "fixmod" && tok.size() == 4) {
        c.fix_mod(parse_size(tok[1], lineno), parse_size(tok[2], lineno),
                  named_stream(tok[3], alphabet));
      } else if (tok[0] == "sqfmod" && tok.size() == 2) {
        c.require_squarefree_subsample(parse_size(tok[1], lineno));
      } else {
        throw bad("unrecognized directive '" + line + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw bad(e.what());
    }
  }
  return c;
}

std::optional<Letter> Constraint::fixed_at(std::size_t i) const {
  if (auto it = fixed_.find(i); it != fixed_.end()) return it->second;
  for (const auto& r : mod_rules_) {
    if (i >= r.offset && (i - r.offset) % r.p == 0) return r.v.at((i - r.offset) / r.p);
  }
  return std::nullopt;
}

std::vector<std::int8_t> Constraint::materialize(std::size_t n) const {
  std::vector<std::int8_t> out(n, -1);
  auto put = [&](std::size_t i, Letter a) {
    if (!alphabet_.contains(a)) throw std::invalid_argument("fixed letter outside the alphabet");
    if (out[i] >= 0 && out[i] != static_cast<std::int8_t>(a)) {
      throw std::invalid_argument("inconsistent constraints at position " + std::to_string(i));
    }
    out[i] = static_cast<std::int8_t>(a);
  };
  for (const auto& [i, a] : fixed_) {
    if (i < n) put(i, a);
  }
  for (const auto& r : mod_rules_) {
    if (r.offset >= n) continue;
    const std::size_t count = (n - 1 - r.offset) / r.p + 1;
    const Word v = r.v.prefix(count);
    for (std::size_t k = 0; k < count; ++k) put(r.offset + k * r.p, v[k]);
  }
  return out;
}

bool Constraint::satisfied_by(const Word& w) const {
  for (Letter a : w) {
    if (!alphabet_.contains(a)) return false;
  }
  if (!is_squarefree(w)) return false;
  for (std::size_t p : sqf_moduli_) {
    if (!is_squarefree(subsample(w, p))) return false;
  }
  std::vector<std::int8_t> fixed;
  try {
    fixed = materialize(w.size());
  } catch (const std::invalid_argument&) {
    return false;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (fixed[i] >= 0 && fixed[i] != static_cast<std::int8_t>(w[i])) return false;
  }
  return true;
}

std::string to_string(SearchKind k) {
  switch (k) {
    case SearchKind::found:
      return "found";
    case SearchKind::exhausted:
      return "exhausted";
    case SearchKind::budget_exhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

SquareTracker::SquareTracker(std::size_t memory_cap_bytes) : memory_cap_(memory_cap_bytes) {}

bool SquareTracker::push(Letter a) {
  const std::size_t n = word_.size();
  const std::uint32_t* prev = nullptr;
  if (n > 0) prev = n <= stored_levels_ ? runs_[n - 1].data() : top_.data();

  // Level for length n+1 goes into its stored slot when memory allows.
  const bool store = stored_levels_ == n && stored_ + n + 1 <= memory_cap_ / sizeof(std::uint32_t);
  std::vector<std::uint32_t>* dest;
  if (store) {
    if (runs_.size() <= n) runs_.emplace_back();
    dest = &runs_[n];
  } else {
    dest = &scratch_;
  }
  dest->resize(n);
  std::uint32_t* next = dest->data();
  const Letter* w = word_.data();
  bool square = false;
  if (n > 0) {
    next[0] = w[0] == a ? 1 : 0;
    square = next[0] >= n;
    const std::uint32_t limit = static_cast<std::uint32_t>(n);
    std::uint32_t hit = 0;
    for (std::size_t j = 1; j < n; ++j) {
      const std::uint32_t mask = 0u - static_cast<std::uint32_t>(w[j] == a);
      const std::uint32_t v = (prev[j - 1] + 1) & mask;
      next[j] = v;
      hit |= static_cast<std::uint32_t>(v + static_cast<std::uint32_t>(j) >= limit);
    }
    square = square || hit != 0;
  }
  if (square) return false;
  word_.push_back(a);
  if (store) {
    ++stored_levels_;
    stored_ += n;
  } else {
    top_.swap(scratch_);
  }
  return true;
}

void SquareTracker::pop() {
  if (word_.empty()) throw std::logic_error("pop on empty tracker");
  const std::size_t n = word_.size();
  word_.pop_back();
  if (n <= stored_levels_) {
    --stored_levels_;
    stored_ -= n - 1;
  } else if (n - 1 > stored_levels_) {
    recompute_top();
  }
}

void SquareTracker::recompute_top() {
  const std::size_t n = word_.size();
  top_.assign(n == 0 ? 0 : n - 1, 0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::size_t t = 0;
    while (t <= j && word_[j - t] == word_[n - 1 - t]) ++t;
    top_[j] = static_cast<std::uint32_t>(t);
  }
}

namespace {

class Engine {
 public:
  Engine(const Constraint& c, std::size_t max_len)
      : fixed_(c.materialize(max_len)), letters_(c.alphabet().size()) {
    for (std::size_t p : c.sqf_moduli()) subs_.push_back({p, SquareTracker{}});
  }

  std::size_t size() const { return main_.size(); }
  unsigned letters() const { return letters_; }

  bool push(Letter a) {
    const std::size_t n = main_.size();
    if (n < fixed_.size() && fixed_[n] >= 0 && fixed_[n] != static_cast<std::int8_t>(a)) {
      return false;
    }
    if (!main_.push(a)) return false;
    for (std::size_t k = 0; k < subs_.size(); ++k) {
      if (n % subs_[k].p != 0) continue;
      if (!subs_[k].tracker.push(a)) {
        for (std::size_t u = 0; u < k; ++u) {
          if (n % subs_[u].p == 0) subs_[u].tracker.pop();
        }
        main_.pop();
        return false;
      }
    }
    return true;
  }

  void pop() {
    const std::size_t n = main_.size() - 1;
    for (auto& s : subs_) {
      if (n % s.p == 0) s.tracker.pop();
    }
    main_.pop();
  }

  Word word() const { return Word(main_.word(), Alphabet(letters_)); }

 private:
  struct Sub {
    std::size_t p;
    SquareTracker tracker;
  };
  std::vector<std::int8_t> fixed_;
  unsigned letters_;
  SquareTracker main_;
  std::vector<Sub> subs_;
};

enum class Mode { first, exhaustive };

SearchOutcome dfs(const Constraint& c, std::size_t target, std::uint64_t budget, Mode mode) {
  SearchOutcome out;
  Engine e(c, target);
  std::vector<Letter> next(target + 1, 0);
  const std::uint64_t profile_step = 1'000'000;
  bool deepest_recorded = false;

  auto record = [&] {
    const std::size_t d = e.size();
    if (d > out.max_length || !deepest_recorded) {
      out.max_length = d;
      out.word = e.word();
      deepest_recorded = true;
      if (mode == Mode::exhaustive) {
        out.maximal_words.clear();
        out.maximal_words.push_back(out.word);
        out.maximal_count = 1;
      }
    } else if (mode == Mode::exhaustive && d == out.max_length) {
      ++out.maximal_count;
      if (out.maximal_words.size() < maximal_words_limit) out.maximal_words.push_back(e.word());
    }
  };
  record();

  while (true) {
    const std::size_t d = e.size();
    if (d == target) {
      if (mode == Mode::first) {
        out.kind = SearchKind::found;
        return out;
      }
      out.kind = SearchKind::budget_exhausted;
      out.note = "cap " + std::to_string(target) + " reached; the tree may be infinite";
      return out;
    }
    bool extended = false;
    while (next[d] < e.letters()) {
      const Letter a = next[d]++;
      if (e.push(a)) {
        extended = true;
        break;
      }
    }
    if (extended) {
      next[d + 1] = 0;
      ++out.nodes_expanded;
      record();
      if (out.nodes_expanded % profile_step == 0) out.depth_profile.push_back(out.max_length);
      if (out.nodes_expanded >= budget && e.size() != target) {
        out.kind = SearchKind::budget_exhausted;
        return out;
      }
      continue;
    }
    if (d == 0) {
      out.kind = SearchKind::exhausted;
      return out;
    }
    e.pop();
  }
}

}  // namespace

SearchOutcome backtrack(const Constraint& c, std::size_t target_len, std::uint64_t budget) {
  return dfs(c, target_len, budget, Mode::first);
}

SearchOutcome exhaustive_max(const Constraint& c, std::size_t cap, std::uint64_t budget) {
  return dfs(c, cap, budget, Mode::exhaustive);
}

SearchOutcome pq_probe(std::size_t p, std::size_t q, std::uint64_t budget, std::size_t max_length) {
  Constraint c;
  c.require_squarefree_subsample(p).require_squarefree_subsample(q);
  SearchOutcome out = dfs(c, max_length, budget, Mode::first);
  if (std::gcd(p, q) != 1) out.note = "warning: moduli are not coprime";
  return out;
}

LcpBoundResult lcp_bound_search(std::size_t middle_len, std::size_t flank_len, std::size_t group) {
  LcpBoundResult r;
  const auto flanks = enumerate_squarefree(Alphabet::ternary(), flank_len);
  const auto middles = enumerate_squarefree(Alphabet::ternary(), middle_len);
  std::vector<Letter> buf(2 * flank_len + middle_len);
  for (const auto& p : flanks) {
    std::copy(p.begin(), p.end(), buf.begin());
    for (const auto& s : flanks) {
      std::copy(s.begin(), s.end(), buf.begin() + static_cast<std::ptrdiff_t>(flank_len + middle_len));
      ++r.pairs_checked;
      std::vector<Word> ok;
      for (const auto& u : middles) {
        std::copy(u.begin(), u.end(), buf.begin() + static_cast<std::ptrdiff_t>(flank_len));
        if (is_squarefree(std::span<const Letter>(buf))) ok.push_back(u);
      }
      if (ok.size() >= group) {
        r.holds = false;
        ++r.solution_count;
        if (r.examples.size() < 16) r.examples.push_back({p, s, std::move(ok)});
      }
    }
  }
  return r;
}

bool lcp_bound_check() { return lcp_bound_search(5, 8, 3).holds; }

std::optional<std::pair<Word, Word>> find_common_flanks(const std::vector<Word>& middles,
                                                        std::size_t flank_len) {
  if (middles.empty()) throw std::invalid_argument("no middles given");
  for (std::size_t i = 0; i < middles.size(); ++i) {
    if (middles[i].size() != middles[0].size()) throw std::invalid_argument("middles differ in length");
    for (std::size_t j = 0; j < i; ++j) {
      if (middles[i] == middles[j]) throw std::invalid_argument("middles must be distinct");
    }
  }
  for (const auto& u : middles) {
    if (!is_squarefree(u)) return std::nullopt;
  }
  const auto flanks = enumerate_squarefree(Alphabet::ternary(), flank_len);
  for (const auto& p : flanks) {
    for (const auto& s : flanks) {
      const bool all = std::all_of(middles.begin(), middles.end(),
                                   [&](const Word& u) { return is_squarefree(p + u + s); });
      if (all) return std::pair{p, s};
    }
  }
  return std::nullopt;
}

bool lcp_witness_valid(const Morphism& h, std::size_t n, std::size_t target_lcp) {
  return h.domain().size() == 3 && h.is_uniform() && h.uniform_length() == n &&
         lcp_of(h) == target_lcp && uniform_sqf_test(h).pass;
}

LcpSearchResult lcp_search(std::size_t n, std::size_t target_lcp, std::uint64_t budget) {
  if (n < 11) throw std::invalid_argument("lcp_search needs n >= 11");
  if (target_lcp >= n) throw std::invalid_argument("target lcp must be below n");
  LcpSearchResult res;
  const std::size_t k = n - target_lcp;
  SquareTracker t;
  std::vector<Letter> next(n + 1, 0);

  auto try_prefix = [&]() -> std::optional<Morphism> {
    // Squarefree completions of the current prefix, by a nested DFS.
    std::vector<Word> tails;
    std::vector<Letter> sub(k + 1, 0);
    std::size_t base = t.size();
    while (true) {
      const std::size_t d = t.size() - base;
      if (d == k) {
        tails.push_back(Word(std::vector<Letter>(t.word().begin() + static_cast<std::ptrdiff_t>(base),
                                                 t.word().end())));
        t.pop();
        continue;
      }
      bool ext = false;
      while (sub[d] < 3) {
        if (t.push(sub[d]++)) {
          ext = true;
          break;
        }
      }
      if (ext) {
        sub[d + 1] = 0;
        ++res.nodes_expanded;
        continue;
      }
      if (d == 0) break;
      t.pop();
    }
    const Word prefix(t.word());
    const std::size_t m = tails.size();
    std::vector<char> compat(m * m, 0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (a != b) compat[a * m + b] = is_squarefree(prefix + tails[a] + prefix + tails[b]);
      }
    }
    auto both = [&](std::size_t a, std::size_t b) { return compat[a * m + b] && compat[b * m + a]; };
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (!both(a, b)) continue;
        for (std::size_t c = b + 1; c < m; ++c) {
          if (!both(a, c) || !both(b, c)) continue;
          if (tails[a][0] == tails[b][0] && tails[b][0] == tails[c][0]) continue;
          Morphism h({prefix + tails[a], prefix + tails[b], prefix + tails[c]});
          if (lcp_witness_valid(h, n, target_lcp)) return h;
        }
      }
    }
    return std::nullopt;
  };

  while (true) {
    const std::size_t d = t.size();
    if (d == target_lcp) {
      if (auto h = try_prefix()) {
        res.morphism = std::move(h);
        return res;
      }
      if (res.nodes_expanded >= budget) {
        res.budget_exhausted = true;
        return res;
      }
      if (d == 0) return res;
      t.pop();
      continue;
    }
    bool ext = false;
    while (next[d] < 3) {
      if (t.push(next[d]++)) {
        ext = true;
        break;
      }
    }
    if (ext) {
      next[d + 1] = 0;
      if (++res.nodes_expanded >= budget) {
        res.budget_exhausted = true;
        return res;
      }
      continue;
    }
    if (d == 0) return res;
    t.pop();
  }
}

Word quaternary_interleave(const Word& ternary, std::size_t p) {
  if (p < 2) throw std::invalid_argument("modulus must be at least 2");
  std::vector<Letter> out;
  out.reserve(ternary.size() + ternary.size() / (p - 1) + 1);
  for (std::size_t i = 0; i < ternary.size(); ++i) {
    if (i % (p - 1) == 0) out.push_back(0);
    out.push_back(static_cast<Letter>(ternary[i] + 1));
  }
  return Word(std::move(out), Alphabet(4));
}

}  // namespace sqfw
