#include "sqfw/paper_checks.hpp"

#include <random>
#include <set>
#include <sstream>

#include "sqfw/automatic.hpp"
#include "sqfw/embed.hpp"
#include "sqfw/search.hpp"
#include "sqfw/verify.hpp"

namespace sqfw {

const std::vector<Word>& p5_maximal_words() {
  static const std::vector<Word> words{
      Word::parse("0102101201020120210201021012010201202101"),
      Word::parse("0102101201020120210201021012010201202120"),
      Word::parse("0120102012021020102101201020120210201210"),
  };
  return words;
}

std::vector<Word> with_letter_exchange(const std::vector<Word>& words) {
  const Permutation swap12({0, 2, 1});
  std::set<Word> all(words.begin(), words.end());
  for (const auto& w : words) all.insert(swap12(w));
  return {all.begin(), all.end()};
}

std::pair<bool, std::string> random_embedding_trial(std::uint64_t seed, std::size_t v_len) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, 59), gap(30, 60);
  std::uniform_int_distribution<int> letter(0, 2);
  std::vector<std::size_t> positions{first(rng)};
  while (positions.size() < v_len) positions.push_back(positions.back() + gap(rng));
  std::vector<Letter> v(v_len);
  for (auto& a : v) a = static_cast<Letter>(letter(rng));
  const Word vw(v);
  const auto spec = PositionSpec::list(positions);
  const WordStream vs = WordStream::from_function(Alphabet::ternary(), [vw](std::size_t i) {
    return i < vw.size() ? vw[i] : Letter{0};
  });
  const std::size_t len = positions.back() + 27;
  const auto res = Embedder::standard().force_subsequence(spec, vs, len);
  const bool ok = res.word.size() == len && verify_embedding(res.word, spec, vs);
  std::ostringstream ss;
  ss << "seed " << seed << ", length " << len << ", " << res.swaps.size() << " swaps, rotation "
     << res.rotation;
  return {ok, ss.str()};
}

namespace {

std::string join(const std::vector<Word>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : " ") + w.str();
  return s;
}

// [w]_5 = 0^omega words split into length-5 blocks; returns blocks outside
// {01021, 01201, 02102, 02012}.
std::set<Word> off_pattern_blocks(const std::vector<Word>& words) {
  const std::set<Word> allowed{Word::parse("01021"), Word::parse("01201"), Word::parse("02102"),
                               Word::parse("02012")};
  std::set<Word> out;
  for (const auto& w : words) {
    for (std::size_t i = 0; i + 5 <= w.size(); i += 5) {
      const Word b = w.slice(i, 5);
      if (!allowed.count(b)) out.insert(b);
    }
  }
  return out;
}

Constraint zero_mod(std::size_t p) {
  Constraint c;
  c.fix_mod(p, 0, WordStream::constant(0));
  return c;
}

}  // namespace

Report verify_paper(const PaperOptions& opt) {
  Report r;
  auto claim = [&](const std::string& id, const std::string& topic,
                   const std::function<Outcome()>& body) {
    if (opt.progress) opt.progress(id);
    r.run(id, topic, body);
  };
  auto observe = [&](const std::string& id, const std::string& topic,
                     const std::function<std::string()>& body) {
    if (opt.progress) opt.progress(id);
    r.observe(id, topic, body);
  };
  const bool all = opt.scope == Scope::all;

  std::optional<Catalog> catalog;
  claim("catalog.load", "catalog", [&] {
    catalog = Catalog::load(opt.asset_dir);
    return Outcome{true, std::to_string(catalog->names().size()) + " entries from " +
                               opt.asset_dir.string()};
  });

  // Finite criteria and the tau-generated word.
  claim("tau.counterexamples", "finite squarefreeness tests", [&] {
    const auto v = ternary_sqf_test(tau());
    const auto mins = minimal_counterexamples(v);
    const std::vector<Word> expected{Word::parse("010"), Word::parse("02120")};
    return Outcome{!v.pass && mins == expected, "minimal counterexamples: " + join(mins)};
  });
  claim("tau.cube", "mod-4 progression of ones", [&] {
    const auto& t3 = tau_cubed();
    const bool ok = t3.image(0) == Word::parse("012021012102") && t3.image(1) == Word::parse("01202102") &&
                    t3.image(2) == Word::parse("0121");
    return Outcome{ok, t3.image(0).str() + " " + t3.image(1).str() + " " + t3.image(2).str()};
  });
  claim("vtm.mod4_ones", "mod-4 progression of ones", [&] {
    const Word w = vtm().prefix(std::size_t{1} << 20);
    for (std::size_t n = 1; n < w.size(); n += 4) {
      if (w[n] != 1) return Outcome{false, "vtm[" + std::to_string(n) + "] != 1"};
    }
    return Outcome{true, "vtm[n] = 1 for n = 1 mod 4, n < 2^20"};
  });
  claim("vtm.squarefree", "the word vtm", [&] {
    return Outcome{is_squarefree(vtm().prefix(100'000)), "prefix of length 10^5"};
  });
  claim("vtm.avoids_010_212", "the word vtm", [&] {
    const auto f = factors(vtm().prefix(1'000'000), 3);
    return Outcome{!f.count(Word::parse("010")) && !f.count(Word::parse("212")),
                     std::to_string(f.size()) + " factors of length 3 in a 10^6 prefix"};
  });

  // Automatic-sequence pipeline.
  const WordStream v = vtm();
  claim("auto.dfao_vtm", "2-automatic structure of vtm", [&] {
    const Dfao a = kernel_synthesize(v);
    const bool ok = dfao_equiv_prefix(a, v, std::size_t{1} << 20);
    return Outcome{ok, std::to_string(a.state_count()) + " states, agrees below 2^20"};
  });
  claim("auto.same_first_last", "2-automatic structure of vtm", [&] {
    const auto rep = same_first_last_bounded(v, 4096, 1'000'000);
    std::size_t worst = 0;
    for (const auto& e : rep.entries) {
      if (e.witness) worst = std::max(worst, *e.witness);
    }
    if (!rep.complete()) return Outcome{false, "no witness for k = " + std::to_string(*rep.first_missing())};
    return Outcome{true, "k = 2..4096, largest least witness " + std::to_string(worst)};
  });
  claim("auto.residue_coverage", "2-automatic structure of vtm", [&] {
    std::set<Word> fs;
    const Word pre = v.prefix(100'000);
    for (std::size_t len = 1; len <= 4; ++len) {
      for (const auto& u : factors(pre, len)) fs.insert(u);
    }
    for (std::size_t k = 1; k <= 15; k += 2) {
      for (const auto& u : fs) {
        const auto rep = residue_coverage(v, u, k, 1'000'000);
        if (!rep.complete()) {
          return Outcome{false, "factor " + u.str() + " misses residue " +
                                      std::to_string(*rep.first_missing()) + " mod " + std::to_string(k)};
        }
      }
    }
    return Outcome{true, std::to_string(fs.size()) + " factors of length <= 4, odd k <= 15"};
  });
  claim("auto.aligned_witnesses", "2-automatic structure of vtm", [&] {
    std::string d;
    for (std::size_t k = 3; k <= 15; k += 2) {
      const auto i = same_first_last_aligned(v, k, 1'000'000);
      if (!i) return Outcome{false, "no aligned witness for k = " + std::to_string(k)};
      d += " " + std::to_string(k) + ":" + std::to_string(*i);
    }
    return Outcome{true, "least i = 0 mod k:" + d};
  });
  claim("auto.doubling", "2-automatic structure of vtm", [&] {
    const auto rep = doubling_check(v, std::size_t{1} << 19);
    return Outcome{rep.clean(), rep.clean() ? "clean below 2^19"
                                              : "violation at " + std::to_string(*rep.first_violation)};
  });
  claim("auto.powers_of_two", "2-automatic structure of vtm", [&] {
    for (std::size_t k = 2; k < (std::size_t{1} << 20); k *= 2) {
      if (v.at(k) != 2 || v.at(2 * k) != 2) return Outcome{false, "fails at k = " + std::to_string(k)};
    }
    return Outcome{true, "vtm[k] = vtm[2k] = 2 for k = 2^a, 1 <= a < 20"};
  });
  claim("auto.subsample_00_22", "2-automatic structure of vtm", [&] {
    const auto rep = subsample_00_or_22(v, 4096, 1'000'000);
    if (!rep.complete()) return Outcome{false, "no 00/22 in [vtm]_k for k = " + std::to_string(*rep.first_missing())};
    return Outcome{true, "[vtm]_k contains 00 or 22 for 2 <= k <= 4096"};
  });

  if (catalog) {
    for (const auto& name : catalog->names()) {
      if (opt.progress) opt.progress("catalog." + name);
      Report sub = verify_entry(catalog->entry(name));
      for (auto c : sub.checks()) {
        c.id = "catalog." + c.id;
        r.add(std::move(c));
      }
    }
    for (std::size_t m : case_moduli()) {
      if (opt.progress) opt.progress("case_p" + std::to_string(m));
      r.append(verify_case(*catalog, m));
    }
    claim("progression.p6_to_p60", "zero progressions from case morphisms", [&] {
      std::size_t covered = 0;
      std::string skipped;
      for (std::size_t p = 6; p <= 60; ++p) {
        if (!progression_case(p)) {
          skipped += " " + std::to_string(p);
          continue;
        }
        const Word w = progression_word(*catalog, p, 10'000);
        const Word s = subsample(w, p);
        const bool zero = std::all_of(s.begin(), s.end(), [](Letter a) { return a == 0; });
        if (!is_squarefree(w) || !zero) return Outcome{false, "fails for p = " + std::to_string(p)};
        ++covered;
      }
      return Outcome{true, std::to_string(covered) + " moduli verified at length 10^4; no case for" + skipped};
    });
    if (opt.progress) opt.progress("pq_3_11");
    r.append(verify_pair_3_11(*catalog));
    if (opt.progress) opt.progress("pq_5_6");
    r.append(verify_pair_5_6(*catalog));
    claim("prime_length.case_morphisms_fail_premises", "prime-length uniform morphisms", [&] {
      for (std::size_t m : case_moduli()) {
        if (theorem10_premises(catalog->morphism("case_p" + std::to_string(m))).pass) {
          return Outcome{false, "case_p" + std::to_string(m) + " passes"};
        }
      }
      return Outcome{true, "all twelve fail the premises"};
    });
    claim("prime_length.uniform11_no_zero_progression", "prime-length uniform morphisms", [&] {
      const auto rep = bounded_no_zero_ap(fixed_point(catalog->morphism("uniform11"), 0), 50, 10'000);
      std::size_t worst = 0;
      for (const auto& e : rep.entries) {
        if (!e.refuted_at) return Outcome{false, "p = " + std::to_string(e.modulus) + " unrefuted"};
        worst = std::max(worst, *e.refuted_at);
      }
      return Outcome{true, "every p <= 50 refuted, largest least i " + std::to_string(worst)};
    });
  }

  // Exhaustive searches with constant zero progressions.
  claim("search.p2_zero", "small moduli", [&] {
    const auto o = exhaustive_max(zero_mod(2), 64);
    return Outcome{o.kind == SearchKind::exhausted && o.max_length == 7,
                     to_string(o.kind) + ", max " + std::to_string(o.max_length)};
  });
  claim("search.p3_zero", "small moduli", [&] {
    const auto o = exhaustive_max(zero_mod(3), 64);
    return Outcome{o.kind == SearchKind::exhausted,
                     to_string(o.kind) + ", max " + std::to_string(o.max_length)};
  });
  std::vector<Word> p5_words;
  claim("search.p5_zero", "small moduli", [&] {
    const auto o = exhaustive_max(zero_mod(5), 128);
    p5_words = o.maximal_words;
    const bool same = o.maximal_words == with_letter_exchange(p5_maximal_words());
    return Outcome{o.kind == SearchKind::exhausted && o.max_length == 40 && same,
                     to_string(o.kind) + ", max " + std::to_string(o.max_length) + ", " +
                         std::to_string(o.maximal_count) + " maximal words"};
  });
  observe("search.p5_block_structure", "small moduli", [&] {
    const auto off = off_pattern_blocks(p5_words);
    return off.empty() ? std::string("all length-5 blocks in {01021, 01201, 02102, 02012}")
                       : "blocks outside {01021, 01201, 02102, 02012}: " + join({off.begin(), off.end()});
  });
  claim("search.p4_alt01", "mod-4 counterexample", [&] {
    Constraint c;
    c.fix_mod(4, 0, named_stream("alt01"));
    const auto o = exhaustive_max(c, 4096);
    return Outcome{o.kind == SearchKind::exhausted,
                     to_string(o.kind) + ", max " + std::to_string(o.max_length) + ", " +
                         std::to_string(o.nodes_expanded) + " nodes"};
  });
  claim("search.quaternary_interleave", "small moduli", [&] {
    const Word t = vtm().prefix(5000);
    for (std::size_t p = 2; p <= 12; ++p) {
      const Word q = quaternary_interleave(t, p);
      const Word s = subsample(q, p);
      if (!is_squarefree(q) || std::any_of(s.begin(), s.end(), [](Letter a) { return a != 0; })) {
        return Outcome{false, "fails for p = " + std::to_string(p)};
      }
    }
    return Outcome{true, "p = 2..12 over four letters"};
  });

  claim("probe.pq_3_11", "pair (3,11)", [&] {
    const auto o = pq_probe(3, 11, 1'000'000, 198);
    return Outcome{o.max_length >= 198, "depth " + std::to_string(o.max_length)};
  });
  claim("probe.pq_5_6", "pair (5,6)", [&] {
    const auto o = pq_probe(5, 6, 10'000'000, 630);
    return Outcome{o.max_length >= 630, "depth " + std::to_string(o.max_length)};
  });
  if (all) {
    observe("probe.pq_5_8", "pair (5,8)", [&] {
      const auto o = pq_probe(5, 8, 100'000'000);
      std::ostringstream ss;
      ss << "plateau " << o.max_length << " after " << o.nodes_expanded << " nodes; profile";
      for (std::size_t i = 0; i < o.depth_profile.size(); i += 10) ss << " " << o.depth_profile[i];
      return ss.str();
    });
  }

  // lcp experiments.
  claim("lcp.relaxed_pairs", "lcp of uniform morphisms", [&] {
    const auto res = lcp_bound_search(5, 7, 2);
    return Outcome{!res.holds, std::to_string(res.solution_count) + " flank pairs of length 7 admit two middles"};
  });
  if (all) {
    claim("lcp.bound_check", "lcp of uniform morphisms", [&] {
      const auto res = lcp_bound_search(5, 8, 3);
      return Outcome{res.holds, std::to_string(res.pairs_checked) + " flank pairs, " +
                                      std::to_string(res.solution_count) + " admit three middles"};
    });
  }
  observe("lcp.search_30_24", "lcp of uniform morphisms", [&] {
    const auto res = lcp_search(30, 24, all ? 100'000'000 : 10'000'000);
    if (!res.morphism) {
      return "no witness within " + std::to_string(res.nodes_expanded) + " nodes";
    }
    const bool ok = uniform_sqf_test(*res.morphism).pass && lcp_of(*res.morphism) == 24;
    return std::string(ok ? "verified witness" : "UNVERIFIED witness") + " after " +
           std::to_string(res.nodes_expanded) + " nodes: " + res.morphism->image(0).str() + " " +
           res.morphism->image(1).str() + " " + res.morphism->image(2).str();
  });

  // Embedding.
  claim("embed.base_word", "forcing letters onto positions", [&] {
    const Embedder& e = Embedder::standard();
    const Word b = e.base_word(100'000);
    const bool prefix = b.slice(0, 26) == Word::parse("01210212021020121021201210");
    return Outcome{prefix && is_squarefree(b), "all-26 image of vtm, length 10^5"};
  });
  claim("embed.random_trials", "forcing letters onto positions", [&] {
    const std::size_t trials = 100;
    for (std::size_t t = 0; t < trials; ++t) {
      auto [ok, d] = random_embedding_trial(opt.seed * 1000 + t, 200);
      if (!ok) return Outcome{false, "trial failed: " + d};
    }
    return Outcome{true, std::to_string(trials) + " trials, |v| = 200, base seed " + std::to_string(opt.seed)};
  });

  r.sort_by_id();
  return r;
}

}  // namespace sqfw
