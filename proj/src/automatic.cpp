#include "sqfw/automatic.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sqfw {

Dfao::Dfao(State initial, std::vector<std::array<State, 2>> transitions, std::vector<Letter> outputs)
    : initial_(initial), transitions_(std::move(transitions)), outputs_(std::move(outputs)) {
  if (transitions_.empty()) throw std::invalid_argument("DFAO needs at least one state");
  if (outputs_.size() != transitions_.size()) throw std::invalid_argument("DFAO output map is not total");
  if (initial_ >= transitions_.size()) throw std::invalid_argument("DFAO initial state out of range");
  for (const auto& t : transitions_) {
    if (t[0] >= transitions_.size() || t[1] >= transitions_.size()) {
      throw std::invalid_argument("DFAO transition target out of range");
    }
  }
}

Dfao::State Dfao::state_after(std::uint64_t n) const {
  State s = initial_;
  if (n == 0) return s;
  int top = 63;
  while (((n >> top) & 1u) == 0) --top;
  for (int b = top; b >= 0; --b) s = transitions_[s][(n >> b) & 1u];
  return s;
}

Dfao Dfao::minimized() const {
  // Reachable states in BFS order.
  std::vector<State> order;
  std::vector<int> seen(transitions_.size(), -1);
  std::deque<State> queue{initial_};
  seen[initial_] = 0;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (unsigned d = 0; d < 2; ++d) {
      State t = transitions_[s][d];
      if (seen[t] < 0) {
        seen[t] = 0;
        queue.push_back(t);
      }
    }
  }
  // Moore refinement.
  std::vector<std::uint32_t> cls(transitions_.size(), 0);
  for (State s : order) cls[s] = outputs_[s];
  std::size_t classes = 0;
  while (true) {
    std::map<std::array<std::uint32_t, 3>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(transitions_.size(), 0);
    for (State s : order) {
      std::array<std::uint32_t, 3> key{cls[s], cls[transitions_[s][0]], cls[transitions_[s][1]]};
      auto it = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first;
      next[s] = it->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  // Renumber classes in BFS order from the initial state.
  std::vector<State> class_rep;
  std::deque<State> q2{initial_};
  std::map<std::uint32_t, State> assigned;
  assigned[cls[initial_]] = 0;
  class_rep.push_back(initial_);
  while (!q2.empty()) {
    State s = q2.front();
    q2.pop_front();
    for (unsigned d = 0; d < 2; ++d) {
      State t = transitions_[s][d];
      if (assigned.emplace(cls[t], static_cast<State>(class_rep.size())).second) {
        class_rep.push_back(t);
        q2.push_back(t);
      }
    }
  }
  std::vector<std::array<State, 2>> trans(class_rep.size());
  std::vector<Letter> outs(class_rep.size());
  for (std::size_t i = 0; i < class_rep.size(); ++i) {
    State s = class_rep[i];
    outs[i] = outputs_[s];
    for (unsigned d = 0; d < 2; ++d) trans[i][d] = assigned.at(cls[transitions_[s][d]]);
  }
  return Dfao(0, std::move(trans), std::move(outs));
}

Dfao Dfao::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> count;
  State init = 0;
  std::vector<std::array<std::optional<State>, 2>> trans;
  std::vector<std::optional<Letter>> outs;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  auto state_index = [&](long long v) -> State {
    if (!count || v < 0 || static_cast<std::size_t>(v) >= *count) fail("state out of range");
    return static_cast<State>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "states") {
      long long n = 0, i = 0;
      std::string kw;
      if (!(ls >> n >> kw >> i) || kw != "init" || n <= 0) fail("expected 'states N init I'");
      count = static_cast<std::size_t>(n);
      trans.assign(*count, {});
      outs.assign(*count, std::nullopt);
      init = state_index(i);
    } else if (tok == "out") {
      long long s = 0, letter = 0;
      std::string arrow;
      if (!(ls >> s >> arrow >> letter) || arrow != "->" || letter < 0 || letter > 3) {
        fail("expected 'out S -> letter'");
      }
      outs[state_index(s)] = static_cast<Letter>(letter);
    } else {
      long long s = 0, d = 0, t = 0;
      std::string arrow;
      std::istringstream ts(line);
      if (!(ts >> s >> d >> arrow >> t) || arrow != "->" || (d != 0 && d != 1)) {
        fail("expected 'S d -> S''");
      }
      trans[state_index(s)][static_cast<std::size_t>(d)] = state_index(t);
    }
  }
  if (!count) throw ParseError("missing 'states' header");
  std::vector<std::array<State, 2>> t2(*count);
  std::vector<Letter> o2(*count);
  for (std::size_t s = 0; s < *count; ++s) {
    if (!trans[s][0] || !trans[s][1]) throw ParseError("transitions of state " + std::to_string(s) + " not total");
    if (!outs[s]) throw ParseError("output of state " + std::to_string(s) + " missing");
    t2[s] = {*trans[s][0], *trans[s][1]};
    o2[s] = *outs[s];
  }
  return Dfao(init, std::move(t2), std::move(o2));
}

std::string Dfao::to_text() const {
  std::ostringstream out;
  out << "states " << state_count() << " init " << initial_ << "\n";
  for (std::size_t s = 0; s < state_count(); ++s) {
    out << s << " 0 -> " << transitions_[s][0] << "\n";
    out << s << " 1 -> " << transitions_[s][1] << "\n";
  }
  for (std::size_t s = 0; s < state_count(); ++s) out << "out " << s << " -> " << int(outputs_[s]) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxPrefix = std::size_t{1} << 28;

struct LsdAutomaton {
  std::vector<std::array<std::uint32_t, 2>> transitions;
  std::vector<Letter> outputs;
};

LsdAutomaton kernel_closure(const WordStream& w, const SynthesisOptions& opt) {
  if (opt.compare_len == 0) throw std::invalid_argument("compare_len must be positive");
  struct Element {
    unsigned e;
    std::uint64_t r;
  };
  std::vector<Letter> prefix;
  auto signature = [&](const Element& el) {
    const std::uint64_t step = std::uint64_t{1} << el.e;
    const std::uint64_t need = step * (opt.compare_len - 1) + el.r + 1;
    if (need > kMaxPrefix) {
      throw ResourceLimitError("kernel element needs a prefix of " + std::to_string(need) + " letters");
    }
    if (prefix.size() < need) {
      const auto word = w.prefix(std::max<std::size_t>(need, 2 * prefix.size()));
      prefix.assign(word.begin(), word.end());
    }
    std::vector<Letter> sig(opt.compare_len);
    for (std::size_t n = 0; n < opt.compare_len; ++n) sig[n] = prefix[step * n + el.r];
    return sig;
  };

  std::map<std::vector<Letter>, std::uint32_t> ids;
  std::vector<Element> reps;
  LsdAutomaton a;
  auto intern = [&](const Element& el) -> std::uint32_t {
    auto sig = signature(el);
    auto [it, inserted] = ids.emplace(std::move(sig), static_cast<std::uint32_t>(reps.size()));
    if (inserted) {
      if (reps.size() >= opt.state_cap) {
        throw ResourceLimitError("2-kernel closure exceeds " + std::to_string(opt.state_cap) + " classes");
      }
      reps.push_back(el);
      a.transitions.push_back({0, 0});
      a.outputs.push_back(it->first[0]);
    }
    return it->second;
  };
  intern({0, 0});
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const Element el = reps[i];
    for (unsigned d = 0; d < 2; ++d) {
      const std::uint32_t t = intern({el.e + 1, el.r + (std::uint64_t{d} << el.e)});
      a.transitions[i][d] = t;
    }
  }
  return a;
}

}  // namespace

std::size_t kernel_size(const WordStream& w, const SynthesisOptions& options) {
  return kernel_closure(w, options).outputs.size();
}

Dfao kernel_synthesize(const WordStream& w, const SynthesisOptions& options) {
  const LsdAutomaton lsd = kernel_closure(w, options);
  const std::size_t q = lsd.outputs.size();
  // msd-first state after reading x is the map q -> delta(q, reverse(x)).
  using Fn = std::vector<std::uint32_t>;
  std::map<Fn, std::uint32_t> ids;
  std::vector<Fn> fns;
  std::vector<std::array<Dfao::State, 2>> trans;
  std::vector<Letter> outs;
  const std::size_t cap = std::max<std::size_t>(options.state_cap * options.state_cap, 1024);
  auto intern = [&](Fn f) -> std::uint32_t {
    auto [it, inserted] = ids.emplace(f, static_cast<std::uint32_t>(fns.size()));
    if (inserted) {
      if (fns.size() >= cap) throw ResourceLimitError("msd-first conversion exceeds state cap");
      outs.push_back(lsd.outputs[f[0]]);
      fns.push_back(std::move(f));
      trans.push_back({0, 0});
    }
    return it->second;
  };
  Fn id(q);
  for (std::size_t i = 0; i < q; ++i) id[i] = static_cast<std::uint32_t>(i);
  intern(id);
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (unsigned d = 0; d < 2; ++d) {
      Fn g(q);
      for (std::size_t s = 0; s < q; ++s) g[s] = fns[i][lsd.transitions[s][d]];
      trans[i][d] = intern(std::move(g));
    }
  }
  return Dfao(0, std::move(trans), std::move(outs)).minimized();
}

bool dfao_equiv_prefix(const Dfao& a, const WordStream& w, std::size_t n) {
  const Word prefix = w.prefix(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.eval(i) != prefix[i]) return false;
  }
  return true;
}

WordStream dfao_stream(const Dfao& a, Alphabet alphabet) {
  return WordStream::from_function(alphabet, [a](std::size_t n) { return a.eval(n); });
}

// ---------------------------------------------------------------------------
// Bounded checks
// ---------------------------------------------------------------------------

bool WitnessReport::complete() const { return !first_missing(); }

std::optional<std::size_t> WitnessReport::first_missing() const {
  for (const auto& e : entries) {
    if (!e.witness) return e.key;
  }
  return std::nullopt;
}

namespace {
bool same_outer(Letter a, Letter b) { return a == b && (a == 0 || a == 2); }
}  // namespace

WitnessReport same_first_last_bounded(const WordStream& w, std::size_t max_gap, std::size_t bound) {
  WitnessReport r;
  const Word prefix = w.prefix(bound + max_gap + 1);
  for (std::size_t k = 2; k <= max_gap; ++k) {
    WitnessReport::Entry e{k, std::nullopt};
    for (std::size_t i = 0; i <= bound; ++i) {
      if (same_outer(prefix[i], prefix[i + k])) {
        e.witness = i;
        break;
      }
    }
    r.entries.push_back(e);
  }
  return r;
}

std::optional<std::size_t> same_first_last_aligned(const WordStream& w, std::size_t k,
                                                    std::size_t bound) {
  if (k == 0) throw std::invalid_argument("gap must be positive");
  const Word prefix = w.prefix(bound + k + 1);
  for (std::size_t i = 0; i <= bound; i += k) {
    if (same_outer(prefix[i], prefix[i + k])) return i;
  }
  return std::nullopt;
}

WitnessReport residue_coverage(const WordStream& w, const Word& u, std::size_t k, std::size_t bound) {
  if (k == 0 || k % 2 == 0) throw std::invalid_argument("residue_coverage needs an odd modulus");
  WitnessReport r;
  for (std::size_t res = 0; res < k; ++res) r.entries.push_back({res, std::nullopt});
  if (u.empty()) throw std::invalid_argument("residue_coverage needs a nonempty factor");
  const Word prefix = w.prefix(bound + u.size());
  std::size_t missing = k;
  for (std::size_t i = 0; i < bound && missing > 0; ++i) {
    auto& e = r.entries[i % k];
    if (e.witness) continue;
    if (std::equal(u.begin(), u.end(), prefix.begin() + static_cast<std::ptrdiff_t>(i))) {
      e.witness = i;
      --missing;
    }
  }
  return r;
}

DoublingReport doubling_check(const WordStream& w, std::size_t bound) {
  DoublingReport r;
  r.bound = bound;
  if (bound == 0) return r;
  const Word prefix = w.prefix(2 * bound);
  for (std::size_t i = 0; i < bound; ++i) {
    const Letter a = prefix[i];
    if ((a == 0 || a == 2) && prefix[2 * i] != a) {
      r.first_violation = i;
      break;
    }
  }
  return r;
}

WitnessReport subsample_00_or_22(const WordStream& w, std::size_t max_gap, std::size_t bound) {
  WitnessReport r;
  for (std::size_t k = 2; k <= max_gap; ++k) {
    WitnessReport::Entry e{k, std::nullopt};
    for (std::size_t j = 0; j <= bound; ++j) {
      if (same_outer(w.at(j * k), w.at((j + 1) * k))) {
        e.witness = j;
        break;
      }
    }
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace sqfw
