#include "sqfw/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqfw {

void Verdict::fail(Counterexample c) {
  pass = false;
  if (!counterexample) counterexample = c;
  failures.push_back(std::move(c));
}

std::vector<Word> minimal_counterexamples(const Verdict& v) {
  std::set<Word> failing;
  for (const auto& c : v.failures) failing.insert(c.input);
  std::vector<Word> out;
  for (const auto& w : failing) {
    bool inherited = false;
    for (std::size_t i = 0; i < w.size() && !inherited; ++i) {
      for (std::size_t len = 1; i + len <= w.size(); ++len) {
        if (len == w.size()) continue;
        if (failing.count(w.slice(i, len))) {
          inherited = true;
          break;
        }
      }
    }
    if (!inherited) out.push_back(w);
  }
  return out;
}

namespace {

void check_images(Verdict& v, const Morphism& h, Alphabet domain, std::size_t max_len) {
  for (std::size_t n = 1; n <= max_len; ++n) {
    for (const auto& x : enumerate_squarefree(domain, n)) {
      Word img = apply(h, x);
      if (auto sq = find_square(img)) v.fail({x, std::move(img), sq, {}});
    }
  }
}

}  // namespace

Verdict ternary_sqf_test(const Morphism& h) {
  if (h.domain().size() != 3) throw std::invalid_argument("ternary_sqf_test needs a ternary domain");
  Verdict v;
  v.test = "ternary_sqf_test";
  check_images(v, h, h.domain(), 5);
  return v;
}

Verdict uniform_sqf_test(const Morphism& h) {
  if (!h.is_uniform()) throw std::invalid_argument("uniform_sqf_test needs a uniform morphism");
  Verdict v;
  v.test = "uniform_sqf_test";
  check_images(v, h, h.domain(), 3);
  return v;
}

Verdict multi_sqf_test(const MultiMorphism& h) {
  if (h.domain().size() != 3) throw std::invalid_argument("multi_sqf_test needs a ternary domain");
  Verdict v;
  v.test = "multi_sqf_test";
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& x : enumerate_squarefree(h.domain(), n)) {
      std::vector<std::size_t> choice(n, 0);
      while (true) {
        std::vector<Letter> img;
        for (std::size_t i = 0; i < n; ++i) {
          const auto& alt = h.alternatives(x[i])[choice[i]];
          img.insert(img.end(), alt.begin(), alt.end());
        }
        ++checked;
        if (!is_squarefree(img)) {
          Word image(std::move(img), h.target());
          auto sq = find_square(image);
          std::string note = "choices";
          for (auto c : choice) note += " " + std::to_string(c);
          v.fail({x, std::move(image), sq, note});
        }
        bool done = true;
        for (std::size_t i = n; i-- > 0;) {
          if (++choice[i] < h.alternatives(x[i]).size()) {
            done = false;
            break;
          }
          choice[i] = 0;
        }
        if (done) break;
      }
    }
  }
  v.detail = std::to_string(checked) + " images checked";
  return v;
}

const std::set<Word>& vtm_factors5() {
  static const std::set<Word> f = [] {
    auto small = factors(vtm().prefix(10'000), 5);
    auto large = factors(vtm().prefix(1'000'000), 5);
    if (small != large) {
      throw std::logic_error("vtm length-5 factor set not stabilized at prefix 10^4");
    }
    return small;
  }();
  return f;
}

Verdict vtm_cond1(const Morphism& g) {
  if (g.domain().size() != 3) throw std::invalid_argument("vtm_cond1 needs a ternary domain");
  Verdict v;
  v.test = "vtm_cond1";
  for (const auto& u : vtm_factors5()) {
    Word img = apply(g, u);
    if (auto sq = find_square(img)) v.fail({u, std::move(img), sq, {}});
  }
  v.detail = std::to_string(vtm_factors5().size()) + " factors";
  return v;
}

Cond2Result vtm_cond2(const Morphism& g) {
  if (g.domain().size() != 3) throw std::invalid_argument("vtm_cond2 needs a ternary domain");
  Cond2Result r;
  r.verdict.test = "vtm_cond2";
  for (Letter a = 0; a < 3; ++a) {
    for (Letter b = 0; b < 3; ++b) {
      for (Letter c = 0; c < 3; ++c) {
        const Word& ga = g.image(a);
        const Word& gb = g.image(b);
        const Word& gc = g.image(c);
        for (std::size_t k = 0; k <= gb.size(); ++k) {
          const Word z = gb.slice(0, k);
          const Word v = gb.slice(k, gb.size() - k);
          if (!ga.ends_with(v) || !gc.starts_with(z)) continue;
          const Word u = ga.slice(0, ga.size() - v.size());
          const Word w = gc.slice(k, gc.size() - k);
          if (!(v == w) && !(u == z)) {
            r.solutions.insert({a, b, c});
            break;
          }
        }
      }
    }
  }
  const std::set<LetterTriple> expected{{0, 1, 0}};
  if (r.solutions != expected) {
    Word input{0, 1, 0};
    std::string note = "solutions:";
    for (const auto& t : r.solutions) {
      note += " " + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
      if (!(t == LetterTriple{0, 1, 0})) input = Word{t[0], t[1], t[2]};
    }
    r.verdict.fail({input, apply(g, input), std::nullopt, note});
  }
  return r;
}

Verdict vtm_cond3(const Morphism& g, const CondThreeWitness& witness) {
  if (witness.suffixes.size() != g.domain().size()) {
    throw std::invalid_argument("vtm_cond3 needs one suffix per letter");
  }
  for (std::size_t a = 0; a < witness.suffixes.size(); ++a) {
    const auto& va = witness.suffixes[a];
    if (va.empty() || !g.image(static_cast<Letter>(a)).ends_with(va)) {
      throw std::invalid_argument("witness for letter " + std::to_string(a) +
                                  " is not a nonempty suffix of its image");
    }
  }
  Verdict v;
  v.test = "vtm_cond3";
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& w : enumerate_squarefree(g.domain(), n)) {
      const Word img = apply(g, w);
      std::vector<bool> boundary(img.size() + 1, false);
      std::size_t off = 0;
      for (Letter a : w) {
        off += g.image(a).size();
        boundary[off] = true;
      }
      for (std::size_t a = 0; a < witness.suffixes.size(); ++a) {
        const auto& va = witness.suffixes[a];
        for (std::size_t i = 0; i + va.size() <= img.size(); ++i) {
          if (!std::equal(va.begin(), va.end(), img.begin() + static_cast<std::ptrdiff_t>(i))) {
            continue;
          }
          if (!boundary[i + va.size()]) {
            v.fail({w, img, std::nullopt,
                    "v_" + std::to_string(a) + " occurrence at " + std::to_string(i) +
                        " does not end at an image boundary"});
            return v;
          }
        }
      }
    }
  }
  return v;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Verdict theorem10_premises(const Morphism& h) {
  Verdict v;
  v.test = "theorem10_premises";
  std::vector<std::string> failed;
  if (h.domain().size() != 3) failed.push_back("not ternary");
  if (!h.is_uniform()) {
    failed.push_back("not uniform");
  } else {
    if (!is_prime(h.uniform_length())) failed.push_back("length not prime");
    if (!uniform_sqf_test(h).pass) failed.push_back("not squarefree");
  }
  if (h.domain().size() == 3) {
    const bool ok = h.image(0)[0] == 0 && h.image(1)[0] != 0 && h.image(2)[0] != 0;
    if (!ok) failed.push_back("prefix condition fails");
  }
  if (!failed.empty()) {
    std::string note;
    for (const auto& f : failed) note += (note.empty() ? "" : "; ") + f;
    v.fail({Word{}, Word{}, std::nullopt, note});
    v.detail = note;
  }
  return v;
}

bool ZeroProgressionReport::all_refuted() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.refuted_at.has_value(); });
}

ZeroProgressionReport bounded_no_zero_ap(const WordStream& w, std::size_t max_modulus,
                                         std::size_t bound) {
  ZeroProgressionReport r;
  r.bound = bound;
  if (max_modulus == 0) return r;
  const Word prefix = w.prefix(max_modulus * bound + 1);
  for (std::size_t p = 1; p <= max_modulus; ++p) {
    ZeroProgressionReport::Entry e{p, std::nullopt};
    for (std::size_t i = 0; i <= bound; ++i) {
      if (prefix[i * p] != 0) {
        e.refuted_at = i;
        break;
      }
    }
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace sqfw
