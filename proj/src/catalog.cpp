#include "sqfw/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sqfw/verify.hpp"

#ifndef SQFW_DEFAULT_ASSET_DIR
#define SQFW_DEFAULT_ASSET_DIR "assets"
#endif

namespace sqfw {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::filesystem::path default_asset_dir() {
  if (const char* env = std::getenv("SQFW_ASSET_DIR"); env && *env) return env;
  return SQFW_DEFAULT_ASSET_DIR;
}

namespace {

struct AssetSpec {
  const char* name;
  const char* file;
  bool multi;
  std::uint64_t checksum;
  Expectations expect;
};

Expectations uniform_case(std::size_t p, std::size_t len) {
  Expectations e;
  e.image_lengths = {len, len, len};
  e.zero_modulus = p;
  e.uniform_sqf = true;
  return e;
}

// Lengths of the long listings were counted when the assets were prepared.
const std::vector<AssetSpec>& asset_specs() {
  static const std::vector<AssetSpec> specs = [] {
    std::vector<AssetSpec> s;
    {
      Expectations e;
      e.image_lengths = {3, 2, 1};
      e.ternary_sqf_fails = true;
      s.push_back({"tau", "tau.morph", false, 0xe0842e51d92e84c6ull, e});
    }
    {
      Expectations e;
      e.image_lengths = {198, 132, 66};
      s.push_back({"pq_3_11", "pq_3_11.morph", false, 0xa634fe1ccfa0bf63ull, e});
    }
    {
      Expectations e;
      e.image_lengths = {7, 6, 5};
      e.ternary_sqf = true;
      s.push_back({"x11", "x11.morph", false, 0x571001b63d16c3edull, e});
    }
    {
      Expectations e;
      e.image_lengths = {630, 720, 720};
      e.ternary_sqf = true;
      s.push_back({"pq_5_6", "pq_5_6.morph", false, 0xc773da769998c578ull, e});
    }
    s.push_back({"case_p6", "case_p6.morph", false, 0x88d75da53f53a55bull, uniform_case(6, 36)});
    s.push_back({"case_p7", "case_p7.morph", false, 0xfbb0a2b64a9bb6d9ull, uniform_case(7, 28)});
    s.push_back({"case_p9", "case_p9.morph", false, 0xeb663c1fb2813b89ull, uniform_case(9, 18)});
    s.push_back({"case_p10", "case_p10.morph", false, 0x611d18d8c5b95fe6ull, uniform_case(10, 20)});
    s.push_back({"case_p11", "case_p11.morph", false, 0x14249c61e6e1b188ull, uniform_case(11, 11)});
    s.push_back({"case_p13", "case_p13.morph", false, 0x7cd83b7f14e2092full, uniform_case(13, 26)});
    s.push_back({"case_p15", "case_p15.morph", false, 0x7c32c6d439871cebull, uniform_case(15, 30)});
    s.push_back({"case_p17", "case_p17.morph", false, 0x5e18fa89eb9a402bull, uniform_case(17, 34)});
    s.push_back({"case_p19", "case_p19.morph", false, 0x939811067ea2078eull, uniform_case(19, 19)});
    s.push_back({"case_p23", "case_p23.morph", false, 0x3c95553c5c489d36ull, uniform_case(23, 23)});
    s.push_back({"case_p25", "case_p25.morph", false, 0x670205d788cb9893ull, uniform_case(25, 25)});
    s.push_back({"case_p29", "case_p29.morph", false, 0xdcee5d9a3237d125ull, uniform_case(29, 29)});
    {
      Expectations e;
      e.image_lengths = {11, 11, 11};
      e.uniform_sqf = true;
      e.theorem10 = true;
      s.push_back({"uniform11", "uniform11.morph", false, 0x2f6ab40207064dbdull, e});
    }
    {
      Expectations e;
      e.image_lengths = {70, 70, 70};
      e.uniform_sqf = true;
      e.lcp = 64;
      s.push_back({"n70", "n70.morph", false, 0x0d8fc695834bced7ull, e});
    }
    {
      Expectations e;
      e.image_lengths = {23, 24, 25, 26};
      e.multi_sqf = true;
      e.lcp = 12;
      s.push_back({"multi_embed", "multi_embed.mmorph", true, 0xaac7ad282f5b98beull, e});
    }
    return s;
  }();
  return specs;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void validate_structure(const CatalogEntry& e) {
  auto mismatch = [&](const std::string& what) {
    throw ParseError("entry " + e.name + ": " + what);
  };
  if (const auto* m = std::get_if<Morphism>(&e.value)) {
    if (m->domain().size() != 3 || m->target().size() != 3) mismatch("not a ternary morphism");
    if (m->images().size() != e.expect.image_lengths.size()) mismatch("wrong number of images");
    for (std::size_t a = 0; a < m->images().size(); ++a) {
      if (m->images()[a].size() != e.expect.image_lengths[a]) {
        mismatch("image of " + std::to_string(a) + " has length " +
                 std::to_string(m->images()[a].size()) + ", expected " +
                 std::to_string(e.expect.image_lengths[a]));
      }
    }
  } else {
    const auto& mm = std::get<MultiMorphism>(e.value);
    if (mm.domain().size() != 3 || mm.target().size() != 3) mismatch("not ternary");
    for (const auto& alts : mm.all()) {
      if (alts.size() != e.expect.image_lengths.size()) mismatch("wrong number of alternatives");
      for (std::size_t i = 0; i < alts.size(); ++i) {
        if (alts[i].size() != e.expect.image_lengths[i]) mismatch("alternative length mismatch");
      }
    }
  }
}

}  // namespace

Catalog Catalog::load(const std::filesystem::path& dir) {
  Catalog c;
  for (const auto& spec : asset_specs()) {
    const auto path = dir / spec.file;
    std::string bytes;
    try {
      bytes = read_bytes(path);
    } catch (const ParseError& e) {
      throw ParseError("entry " + std::string(spec.name) + ": " + e.what());
    }
    CatalogEntry entry{spec.name, spec.file, Morphism::identity(), spec.expect, spec.checksum,
                       fnv1a64(bytes)};
    try {
      if (spec.multi) {
        entry.value = MultiMorphism::parse(bytes);
      } else {
        entry.value = Morphism::parse(bytes);
      }
    } catch (const ParseError& e) {
      throw ParseError("entry " + std::string(spec.name) + " (" + path.string() + "): " + e.what());
    }
    validate_structure(entry);
    c.entries_.emplace(entry.name, std::move(entry));
  }
  return c;
}

const CatalogEntry& Catalog::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw std::out_of_range("no catalog entry named " + name);
  return it->second;
}

const Morphism& Catalog::morphism(const std::string& name) const {
  const auto& e = entry(name);
  if (const auto* m = std::get_if<Morphism>(&e.value)) return *m;
  throw std::invalid_argument("catalog entry " + name + " is multi-valued");
}

const MultiMorphism& Catalog::multi(const std::string& name) const {
  const auto& e = entry(name);
  if (const auto* m = std::get_if<MultiMorphism>(&e.value)) return *m;
  throw std::invalid_argument("catalog entry " + name + " is not multi-valued");
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [name, e] : entries_) out.push_back(name);
  return out;
}

const std::vector<std::size_t>& case_moduli() {
  static const std::vector<std::size_t> m{6, 7, 9, 10, 11, 13, 15, 17, 19, 23, 25, 29};
  return m;
}

std::optional<std::size_t> progression_case(std::size_t p) {
  if (p < 6) return std::nullopt;
  for (std::size_t m : case_moduli()) {
    if (p % m == 0) return m;
  }
  return std::nullopt;
}

namespace {

std::string verdict_details(const Verdict& v) {
  if (v.pass) return v.detail;
  std::string s = "counterexample";
  if (v.counterexample) {
    s += " " + v.counterexample->input.str();
    if (v.counterexample->square) {
      s += " square at " + std::to_string(v.counterexample->square->start) + " period " +
           std::to_string(v.counterexample->square->period);
    }
    if (!v.counterexample->note.empty()) s += " (" + v.counterexample->note + ")";
  }
  return s;
}

bool zero_positions_hold(const Morphism& h, std::size_t p) {
  for (const auto& img : h.images()) {
    if (img.size() % p != 0) return false;
    for (std::size_t i = 0; i < img.size(); i += p) {
      if (img[i] != 0) return false;
    }
  }
  return true;
}

}  // namespace

Report verify_entry(const CatalogEntry& e) {
  Report r;
  const std::string topic = "catalog";
  r.run(e.name + ".checksum", topic, [&] {
    std::ostringstream ss;
    ss << std::hex << "fnv1a64 0x" << e.checksum << " pinned 0x" << e.pinned_checksum;
    return Outcome{e.checksum_ok(), ss.str()};
  });
  if (const auto* m = std::get_if<Morphism>(&e.value)) {
    if (e.expect.ternary_sqf) {
      r.run(e.name + ".ternary_sqf", topic, [&] {
        auto v = ternary_sqf_test(*m);
        return Outcome{v.pass, verdict_details(v)};
      });
    }
    if (e.expect.ternary_sqf_fails) {
      r.run(e.name + ".ternary_sqf_fails", topic, [&] {
        auto v = ternary_sqf_test(*m);
        std::string mins;
        for (const auto& w : minimal_counterexamples(v)) mins += " " + w.str();
        return Outcome{!v.pass, "minimal counterexamples:" + mins};
      });
    }
    if (e.expect.uniform_sqf) {
      r.run(e.name + ".uniform_sqf", topic, [&] {
        auto v = uniform_sqf_test(*m);
        return Outcome{v.pass, verdict_details(v)};
      });
    }
    if (e.expect.zero_modulus) {
      r.run(e.name + ".zero_positions", topic, [&] {
        return Outcome{zero_positions_hold(*m, *e.expect.zero_modulus),
                         "modulus " + std::to_string(*e.expect.zero_modulus)};
      });
    }
    if (e.expect.lcp) {
      r.run(e.name + ".lcp", topic, [&] {
        const auto l = lcp_of(*m);
        return Outcome{l == *e.expect.lcp, "lcp " + std::to_string(l)};
      });
    }
    if (e.expect.theorem10) {
      r.run(e.name + ".theorem10_premises", topic, [&] {
        auto v = theorem10_premises(*m);
        return Outcome{v.pass, verdict_details(v)};
      });
    }
  } else {
    const auto& mm = std::get<MultiMorphism>(e.value);
    if (e.expect.multi_sqf) {
      r.run(e.name + ".multi_sqf", topic, [&] {
        auto v = multi_sqf_test(mm);
        return Outcome{v.pass, verdict_details(v)};
      });
    }
    if (e.expect.lcp) {
      r.run(e.name + ".lcp_lcs", topic, [&] {
        bool ok = true;
        std::string d;
        for (const auto& alts : mm.all()) {
          const auto p = longest_common_prefix(alts);
          const auto s = longest_common_suffix(alts);
          ok = ok && p == *e.expect.lcp && s == 9;
          d += " " + std::to_string(p) + "/" + std::to_string(s);
        }
        return Outcome{ok, "common prefix/suffix per letter:" + d};
      });
    }
  }
  return r;
}

Report verify_case(const Catalog& catalog, std::size_t p) {
  const std::string name = "case_p" + std::to_string(p);
  const Morphism& h = catalog.morphism(name);
  const auto& expect = catalog.entry(name).expect;
  Report r;
  const std::string topic = "zero progressions from case morphisms";
  r.run(name + ".uniform_sqf", topic, [&] {
    auto v = uniform_sqf_test(h);
    return Outcome{v.pass, verdict_details(v)};
  });
  r.run(name + ".image_length", topic, [&] {
    const auto len = h.uniform_length();
    return Outcome{len == expect.image_lengths.front() && len % p == 0,
                     "length " + std::to_string(len)};
  });
  r.run(name + ".zero_positions", topic, [&] {
    return Outcome{zero_positions_hold(h, p), "positions = 0 mod " + std::to_string(p)};
  });
  return r;
}

Report verify_pair_3_11(const Catalog& catalog) {
  const Morphism& h = catalog.morphism("pq_3_11");
  const Morphism& x11 = catalog.morphism("x11");
  const Morphism h3 = subsample_morphism(h, 3);
  const Morphism h11 = subsample_morphism(h, 11);
  const Morphism h11_hat = conjugate(h11, 0);
  const std::string topic = "pair (3,11)";
  Report r;

  struct Subject {
    std::string name;
    const Morphism* g;
    CondThreeWitness witness;
  };
  const std::vector<Subject> subjects{
      {"h", &h, CondThreeWitness::uniform(Word::parse("02102010210120212"))},
      {"h3", &h3, CondThreeWitness::uniform(Word::parse("210212"))},
      {"h11_hat", &h11_hat,
       CondThreeWitness{{Word::parse("1210"), Word::parse("1210"), Word::parse("20210")}}},
  };
  for (const auto& s : subjects) {
    r.run("pq_3_11." + s.name + ".cond1", topic, [&] {
      auto v = vtm_cond1(*s.g);
      return Outcome{v.pass, verdict_details(v)};
    });
    r.run("pq_3_11." + s.name + ".cond2", topic, [&] {
      auto c2 = vtm_cond2(*s.g);
      std::string sols;
      for (const auto& t : c2.solutions) sols += " " + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
      return Outcome{c2.verdict.pass, "solutions:" + sols};
    });
    r.run("pq_3_11." + s.name + ".cond3", topic, [&] {
      auto v = vtm_cond3(*s.g, s.witness);
      return Outcome{v.pass, verdict_details(v)};
    });
  }
  r.run("pq_3_11.h11_factorization", topic, [&] {
    return Outcome{compose(x11, tau()) == h11, "h11 = x11 o tau"};
  });
  r.run("pq_3_11.x11_ternary_sqf", topic, [&] {
    auto v = ternary_sqf_test(x11);
    return Outcome{v.pass, verdict_details(v)};
  });
  r.run("pq_3_11.image_prefixes", topic, [&] {
    const Word img = apply(h, vtm().prefix(3000));
    const Word s3 = subsample(img, 3);
    const Word s11 = subsample(img, 11);
    const bool ok = img.size() >= 10'000 && s3.size() >= 10'000 && s11.size() >= 10'000 &&
                    is_squarefree(img) && is_squarefree(s3) && is_squarefree(s11);
    return Outcome{ok, "h(vtm), h3(vtm), h11(vtm) prefixes of " + std::to_string(img.size()) + ", " +
                             std::to_string(s3.size()) + ", " + std::to_string(s11.size()) + " letters"};
  });
  return r;
}

Report verify_pair_5_6(const Catalog& catalog) {
  const Morphism& h = catalog.morphism("pq_5_6");
  const std::string topic = "pair (5,6)";
  Report r;
  r.run("pq_5_6.divisibility", topic, [&] {
    bool ok = true;
    std::string d;
    for (const auto& img : h.images()) {
      ok = ok && img.size() % 30 == 0;
      d += " " + std::to_string(img.size());
    }
    return Outcome{ok, "image lengths" + d};
  });
  r.run("pq_5_6.h.ternary_sqf", topic, [&] {
    auto v = ternary_sqf_test(h);
    return Outcome{v.pass, verdict_details(v)};
  });
  for (std::size_t p : {5u, 6u}) {
    r.run("pq_5_6.h" + std::to_string(p) + ".ternary_sqf", topic, [&] {
      auto v = ternary_sqf_test(subsample_morphism(h, p));
      return Outcome{v.pass, verdict_details(v)};
    });
  }
  return r;
}

Word progression_word(const Catalog& catalog, std::size_t p, std::size_t len) {
  const auto m = progression_case(p);
  if (!m) {
    throw std::invalid_argument("no case morphism divides p = " + std::to_string(p) +
                                " (needs p >= 6 divisible by one of 6,7,9,10,11,13,15,17,19,23,25,29)");
  }
  const Morphism& h = catalog.morphism("case_p" + std::to_string(*m));
  const std::size_t n = len / h.uniform_length() + 1;
  return apply(h, vtm().prefix(n)).slice(0, len);
}

}  // namespace sqfw
