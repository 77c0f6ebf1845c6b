// sqfw: command-line front end.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqfw/automatic.hpp"
#include "sqfw/catalog.hpp"
#include "sqfw/embed.hpp"
#include "sqfw/morphism.hpp"
#include "sqfw/paper_checks.hpp"
#include "sqfw/search.hpp"
#include "sqfw/verify.hpp"
#include "sqfw/word.hpp"

namespace fs = std::filesystem;
using namespace sqfw;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Existing path as given, else relative to the asset directory.
fs::path locate(const std::string& file) {
  if (fs::exists(file)) return file;
  const fs::path alt = default_asset_dir() / file;
  if (fs::exists(alt)) return alt;
  throw UsageError("no such file: " + file);
}

const Catalog& catalog() {
  static const Catalog c = Catalog::load();
  return c;
}

bool is_catalog_name(const std::string& name) {
  try {
    return catalog().contains(name);
  } catch (const std::exception&) {
    return false;
  }
}

Morphism resolve_morphism(const std::string& name_or_file) {
  if (name_or_file == "tau") return tau();
  if (name_or_file == "tau3") return tau_cubed();
  if (is_catalog_name(name_or_file)) return catalog().morphism(name_or_file);
  return Morphism::from_file(locate(name_or_file));
}

MultiMorphism resolve_multi(const std::string& name_or_file) {
  if (is_catalog_name(name_or_file)) return catalog().multi(name_or_file);
  return MultiMorphism::from_file(locate(name_or_file));
}

Word parse_word(const std::string& text, Alphabet a = {}) {
  if (text.find(':') != std::string::npos) return parse_serialized_prefix(text, a);
  return Word::parse(text, a);
}

std::string square_text(const Word& w, const Square& s) {
  return "square at " + std::to_string(s.start) + " period " + std::to_string(s.period) + ": " +
         w.slice(s.start, 2 * s.period).str();
}

void print_verdict(const Verdict& v, std::ostream& out) {
  out << v.test << ": " << (v.pass ? "pass" : "fail") << "\n";
  if (!v.detail.empty()) out << "  " << v.detail << "\n";
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    out << "  counterexample " << c.input.str();
    if (c.square) out << ", image " << square_text(c.image, *c.square);
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  if (!v.failures.empty()) {
    out << "  minimal counterexamples:";
    for (const auto& w : minimal_counterexamples(v)) out << " " << w.str();
    out << "\n";
  }
}

struct CheckWordArgs {
  std::string word;
  unsigned alphabet = 3;
};

int run_check_word(const CheckWordArgs& a) {
  const Word w = parse_word(a.word, Alphabet(a.alphabet));
  if (auto s = find_square(w)) {
    std::cout << square_text(w, *s) << "\n";
    return exit_fail;
  }
  std::cout << "squarefree (length " << w.size() << ")\n";
  return exit_ok;
}

struct CheckMorphismArgs {
  std::string file;
  std::string name;
  std::string mode = "ternary";
  bool json = false;
};

int run_check_morphism(const CheckMorphismArgs& a) {
  if (a.file.empty() == a.name.empty()) throw UsageError("give exactly one of --file and --name");
  const std::string src = a.file.empty() ? a.name : a.file;
  Verdict v;
  if (a.mode == "multi") {
    v = multi_sqf_test(resolve_multi(src));
  } else {
    const Morphism h = a.file.empty() ? resolve_morphism(a.name) : Morphism::from_file(locate(a.file));
    if (a.mode == "ternary") {
      v = ternary_sqf_test(h);
    } else if (a.mode == "uniform") {
      v = uniform_sqf_test(h);
    } else if (a.mode == "theorem10") {
      v = theorem10_premises(h);
    } else if (a.mode == "cond1") {
      v = vtm_cond1(h);
    } else if (a.mode == "cond2") {
      v = vtm_cond2(h).verdict;
    } else {
      throw UsageError("unknown mode " + a.mode);
    }
  }
  if (a.json) {
    std::cout << to_json(v, src).dump() << "\n";
  } else {
    print_verdict(v, std::cout);
  }
  return v.pass ? exit_ok : exit_fail;
}

struct GenArgs {
  std::string morphism;
  std::string stream;
  std::string apply_to;
  unsigned letter = 0;
  std::size_t len = 0;
  bool serialize = false;
};

int run_gen(const GenArgs& a) {
  WordStream w = WordStream::constant(0);
  if (!a.stream.empty()) {
    if (!a.morphism.empty()) throw UsageError("--stream and --morphism are exclusive");
    w = named_stream(a.stream);
  } else if (!a.morphism.empty()) {
    const Morphism h = resolve_morphism(a.morphism);
    if (!a.apply_to.empty()) {
      w = apply(h, named_stream(a.apply_to));
    } else {
      if (a.letter >= h.domain().size()) throw UsageError("letter outside the domain");
      w = fixed_point(h, static_cast<Letter>(a.letter));
    }
  } else {
    throw UsageError("give --morphism or --stream");
  }
  std::cout << (a.serialize ? serialize_prefix(w, a.len) : w.prefix(a.len).str()) << "\n";
  return exit_ok;
}

struct SubsampleArgs {
  std::string word;
  std::string file;
  std::size_t p = 1;
  std::size_t offset = 0;
};

int run_subsample(const SubsampleArgs& a) {
  if (a.word.empty() == a.file.empty()) throw UsageError("give exactly one of a word and --file");
  std::string text = a.word;
  if (!a.file.empty()) {
    text = read_file(a.file);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  }
  if (a.p == 0) throw UsageError("modulus must be positive");
  std::cout << subsample(parse_word(text), a.p, a.offset).str() << "\n";
  return exit_ok;
}

struct SearchArgs {
  std::string constraints;
  std::vector<std::string> fix;
  std::vector<std::string> fixmod;
  std::vector<std::size_t> sqfmod;
  std::size_t len = 0;
  std::uint64_t budget = 100'000'000;
  bool exhaustive = false;
};

void print_outcome(const SearchOutcome& o, bool all_words) {
  std::cout << "kind " << to_string(o.kind) << "\n"
            << "max_length " << o.max_length << "\n"
            << "nodes " << o.nodes_expanded << "\n";
  if (!o.note.empty()) std::cout << "note " << o.note << "\n";
  std::cout << "word " << o.word.str() << "\n";
  if (all_words) {
    std::cout << "maximal_count " << o.maximal_count << "\n";
    for (const auto& w : o.maximal_words) std::cout << "maximal " << w.str() << "\n";
  }
}

int run_search(const SearchArgs& a) {
  Constraint c = a.constraints.empty() ? Constraint{} : Constraint::parse(read_file(a.constraints));
  for (const auto& f : a.fix) {
    const auto colon = f.find(':');
    if (colon == std::string::npos) throw UsageError("--fix expects index:letter");
    c.fix(std::stoull(f.substr(0, colon)), static_cast<Letter>(std::stoul(f.substr(colon + 1))));
  }
  for (const auto& f : a.fixmod) {
    std::string t = f;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::size_t p = 0, off = 0;
    std::string stream;
    if (!(in >> p >> off >> stream)) throw UsageError("--fixmod expects p,offset,stream");
    c.fix_mod(p, off, named_stream(stream));
  }
  for (std::size_t p : a.sqfmod) c.require_squarefree_subsample(p);
  if (a.exhaustive) {
    const auto o = exhaustive_max(c, a.len, a.budget);
    print_outcome(o, true);
    return o.kind == SearchKind::exhausted ? exit_ok : exit_fail;
  }
  const auto o = backtrack(c, a.len, a.budget);
  print_outcome(o, false);
  return o.kind == SearchKind::found ? exit_ok : exit_fail;
}

struct ProbeArgs {
  std::size_t p = 5, q = 8;
  std::uint64_t budget = 10'000'000;
  std::size_t max_length = 20000;
};

int run_probe(const ProbeArgs& a) {
  const auto o = pq_probe(a.p, a.q, a.budget, a.max_length);
  std::cout << "kind " << to_string(o.kind) << "\n"
            << "plateau " << o.max_length << "\n"
            << "nodes " << o.nodes_expanded << "\n";
  if (!o.note.empty()) std::cerr << o.note << "\n";
  std::cout << "profile";
  for (auto d : o.depth_profile) std::cout << " " << d;
  std::cout << "\n";
  return exit_ok;
}

struct EmbedArgs {
  std::string positions;
  std::string v;
  std::size_t len = 0;
  std::string swap_log;
};

int run_embed(const EmbedArgs& a) {
  const PositionSpec spec = a.positions.rfind("arith:", 0) == 0 || !fs::exists(a.positions)
                                ? PositionSpec::parse(a.positions)
                                : PositionSpec::from_file(a.positions);
  const WordStream v = named_stream(a.v);
  const auto res = Embedder::standard().force_subsequence(spec, v, a.len);
  std::cout << res.word.str() << "\n";
  std::ofstream log_file;
  std::ostream* log = &std::cerr;
  if (!a.swap_log.empty()) {
    log_file.open(a.swap_log);
    if (!log_file) throw UsageError("cannot write " + a.swap_log);
    log = &log_file;
  }
  *log << nlohmann::json{{"rotation", res.rotation}, {"swaps", res.swaps.size()}}.dump() << "\n";
  for (const auto& s : res.swaps) {
    *log << nlohmann::json{{"image", s.image_index},
                           {"old", s.old_alternative},
                           {"new", s.new_alternative},
                           {"d", s.d},
                           {"position", s.position}}
                .dump()
         << "\n";
  }
  const bool ok = verify_embedding(res.word, spec, v);
  if (!ok) std::cerr << "embedding failed verification\n";
  return ok ? exit_ok : exit_fail;
}

struct LcpArgs {
  std::string morphism;
  bool bound = false;
  std::size_t middle = 5, flank = 8, group = 3;
  std::size_t n = 0, target = 0;
  std::uint64_t budget = 100'000'000;
};

int run_lcp(const LcpArgs& a) {
  if (!a.morphism.empty()) {
    std::cout << "lcp " << lcp_of(resolve_morphism(a.morphism)) << "\n";
    return exit_ok;
  }
  if (a.bound) {
    const auto r = lcp_bound_search(a.middle, a.flank, a.group);
    std::cout << "holds " << (r.holds ? "true" : "false") << "\n"
              << "flank_pairs " << r.pairs_checked << "\n"
              << "solutions " << r.solution_count << "\n";
    for (const auto& s : r.examples) {
      std::cout << "example " << s.prefix.str() << " [";
      for (std::size_t i = 0; i < s.middles.size(); ++i) std::cout << (i ? " " : "") << s.middles[i].str();
      std::cout << "] " << s.suffix.str() << "\n";
    }
    return r.holds ? exit_ok : exit_fail;
  }
  if (a.n == 0) throw UsageError("give --morphism, --bound, or --n with --target");
  const auto r = lcp_search(a.n, a.target, a.budget);
  std::cout << "nodes " << r.nodes_expanded << "\n";
  if (!r.morphism) {
    std::cout << (r.budget_exhausted ? "budget exhausted\n" : "no morphism exists\n");
    return exit_fail;
  }
  std::cout << r.morphism->to_text();
  return exit_ok;
}

struct DfaoArgs {
  std::string stream = "vtm";
  std::size_t compare_len = std::size_t{1} << 16;
  std::string file;
  std::uint64_t n = 0;
  std::size_t check_len = std::size_t{1} << 20;
};

int run_dfao_synth(const DfaoArgs& a) {
  const Dfao d = kernel_synthesize(named_stream(a.stream), SynthesisOptions{a.compare_len, 256});
  std::cout << d.to_text();
  return exit_ok;
}

int run_dfao_eval(const DfaoArgs& a) {
  std::cout << static_cast<unsigned>(Dfao::parse(read_file(a.file)).eval(a.n)) << "\n";
  return exit_ok;
}

int run_dfao_check(const DfaoArgs& a) {
  const bool ok = dfao_equiv_prefix(Dfao::parse(read_file(a.file)), named_stream(a.stream), a.check_len);
  std::cout << (ok ? "agrees" : "differs") << " on the first " << a.check_len << " letters\n";
  return ok ? exit_ok : exit_fail;
}

struct PaperArgs {
  std::string scope = "fast";
  std::uint64_t seed = 0;
  std::string out;
  bool quiet = false;
};

int run_verify_paper(const PaperArgs& a) {
  PaperOptions opt;
  opt.scope = a.scope == "all" ? Scope::all : Scope::fast;
  opt.seed = a.seed;
  if (!a.quiet) opt.progress = [](const std::string& id) { std::cerr << "running " << id << "\n"; };
  const Report r = verify_paper(opt);
  if (a.out.empty()) {
    r.write_jsonl(std::cout);
    r.write_summary(std::cerr);
  } else {
    std::ofstream f(a.out);
    if (!f) throw UsageError("cannot write " + a.out);
    r.write_jsonl(f);
    r.write_summary(std::cout);
  }
  return r.passed() ? exit_ok : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squarefree words, morphisms and arithmetic-progression constraints"};
  app.require_subcommand(1);

  CheckWordArgs cw;
  auto* c_word = app.add_subcommand("check-word", "Report the first square of a word");
  c_word->add_option("word", cw.word, "Digit string or n:digits")->required();
  c_word->add_option("--alphabet", cw.alphabet, "Alphabet size")->check(CLI::Range(2, 4));

  CheckMorphismArgs cm;
  auto* c_morph = app.add_subcommand("check-morphism", "Run a squarefreeness test on a morphism");
  c_morph->add_option("--file", cm.file, "Morphism file");
  c_morph->add_option("--name", cm.name, "Catalog name, tau or tau3");
  c_morph->add_option("--mode", cm.mode, "ternary, uniform, multi, theorem10, cond1 or cond2")
      ->check(CLI::IsMember({"ternary", "uniform", "multi", "theorem10", "cond1", "cond2"}));
  c_morph->add_flag("--json", cm.json, "Print a JSON record");

  GenArgs g;
  auto* c_gen = app.add_subcommand("gen", "Print a prefix of a fixed point, image or named stream");
  c_gen->add_option("--morphism", g.morphism, "Morphism file or name");
  c_gen->add_option("--letter", g.letter, "Fixed point letter");
  c_gen->add_option("--apply", g.apply_to, "Apply the morphism to this stream instead");
  c_gen->add_option("--stream", g.stream, "vtm, zero, alt01, tm or digits");
  c_gen->add_option("--len", g.len, "Prefix length")->required();
  c_gen->add_flag("--serialize", g.serialize, "Print as n:digits");

  SubsampleArgs ss;
  auto* c_sub = app.add_subcommand("subsample", "Print [w]_p");
  c_sub->add_option("word", ss.word, "Digit string or n:digits");
  c_sub->add_option("--file", ss.file, "Read the word from a file");
  c_sub->add_option("--p", ss.p, "Modulus")->required();
  c_sub->add_option("--offset", ss.offset, "First index");

  SearchArgs sa;
  auto* c_search = app.add_subcommand("search", "Backtracking search under constraints");
  c_search->add_option("--constraints", sa.constraints, "Constraint file");
  c_search->add_option("--fix", sa.fix, "index:letter (repeatable)");
  c_search->add_option("--fixmod", sa.fixmod, "p,offset,stream (repeatable)");
  c_search->add_option("--sqfmod", sa.sqfmod, "Require [w]_p squarefree (repeatable)");
  c_search->add_option("--len", sa.len, "Target length, or cap with --exhaustive")->required();
  c_search->add_option("--budget", sa.budget, "Node budget");
  c_search->add_flag("--exhaustive", sa.exhaustive, "Find the maximum length and all maximal words");

  ProbeArgs pa;
  auto* c_probe = app.add_subcommand("probe", "Depth reached with [w]_p and [w]_q squarefree");
  c_probe->add_option("--p", pa.p, "First modulus")->required();
  c_probe->add_option("--q", pa.q, "Second modulus")->required();
  c_probe->add_option("--budget", pa.budget, "Node budget");
  c_probe->add_option("--max-length", pa.max_length, "Stop at this depth");

  EmbedArgs ea;
  auto* c_embed = app.add_subcommand("embed", "Force v onto a position sequence of a squarefree word");
  c_embed->add_option("--positions", ea.positions, "File, index list, or arith:p0,step")->required();
  c_embed->add_option("--v", ea.v, "Digits (repeated) or stream name")->required();
  c_embed->add_option("--len", ea.len, "Output length")->required();
  c_embed->add_option("--swap-log", ea.swap_log, "Write the swap log here instead of stderr");

  LcpArgs la;
  auto* c_lcp = app.add_subcommand("lcp", "lcp of a morphism, the flank bound, or lcp search");
  c_lcp->add_option("--morphism", la.morphism, "Print lcp of this morphism");
  c_lcp->add_flag("--bound", la.bound, "Run the flank bound check");
  c_lcp->add_option("--middle", la.middle, "Middle length for --bound");
  c_lcp->add_option("--flank", la.flank, "Flank length for --bound");
  c_lcp->add_option("--group", la.group, "Middles per flank pair for --bound");
  c_lcp->add_option("--n", la.n, "Uniform length to search");
  c_lcp->add_option("--target", la.target, "Target lcp");
  c_lcp->add_option("--budget", la.budget, "Node budget");

  DfaoArgs da;
  auto* c_dfao = app.add_subcommand("dfao", "Synthesize, evaluate or check a 2-DFAO");
  c_dfao->require_subcommand(1);
  auto* d_synth = c_dfao->add_subcommand("synth", "Synthesize from the 2-kernel of a stream");
  d_synth->add_option("--stream", da.stream, "Stream name");
  d_synth->add_option("--compare-len", da.compare_len, "Prefix length identifying kernel elements");
  auto* d_eval = c_dfao->add_subcommand("eval", "Evaluate at n");
  d_eval->add_option("--file", da.file, "DFAO file")->required();
  d_eval->add_option("--n", da.n, "Argument")->required();
  auto* d_check = c_dfao->add_subcommand("check", "Compare with a stream");
  d_check->add_option("--file", da.file, "DFAO file")->required();
  d_check->add_option("--stream", da.stream, "Stream name");
  d_check->add_option("--len", da.check_len, "Prefix length");

  PaperArgs va;
  auto* c_paper = app.add_subcommand("verify-paper", "Run every claim check and emit a report");
  c_paper->add_option("--scope", va.scope, "fast or all")->check(CLI::IsMember({"fast", "all"}));
  c_paper->add_option("--seed", va.seed, "Seed for randomized trials");
  c_paper->add_option("--out", va.out, "Write records here; the summary goes to stdout");
  c_paper->add_flag("--quiet", va.quiet, "No progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*c_word) return run_check_word(cw);
    if (*c_morph) return run_check_morphism(cm);
    if (*c_gen) return run_gen(g);
    if (*c_sub) return run_subsample(ss);
    if (*c_search) return run_search(sa);
    if (*c_probe) return run_probe(pa);
    if (*c_embed) return run_embed(ea);
    if (*c_lcp) return run_lcp(la);
    if (*d_synth) return run_dfao_synth(da);
    if (*d_eval) return run_dfao_eval(da);
    if (*d_check) return run_dfao_check(da);
    if (*c_paper) return run_verify_paper(va);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_usage;
}
