#include "doctest.h"
#include "sqfw/morphism.hpp"

using namespace sqfw;
using namespace sqfw::literals;

namespace {

// vtm by the definition via Thue-Morse: count of 1s between consecutive 0s
// of the binary Thue-Morse word is 2, 1 or 0.
Word vtm_oracle(std::size_t n) {
  auto t = [](std::size_t i) { return __builtin_popcountll(i) & 1; };
  std::vector<Letter> out;
  std::size_t i = 0;
  while (out.size() < n) {
    // Next 0 of Thue-Morse after position i.
    std::size_t j = i + 1;
    while (t(j) != 0) ++j;
    out.push_back(static_cast<Letter>(2 - (j - i - 1)));
    i = j;
  }
  return Word(out);
}

}  // namespace

TEST_CASE("tau and its fixed point") {
  const Morphism& t = tau();
  CHECK(t.image(0) == "012"_w);
  CHECK(t.image(1) == "02"_w);
  CHECK(t.image(2) == "1"_w);
  CHECK_FALSE(t.is_uniform());
  CHECK_THROWS_AS(t.uniform_length(), std::invalid_argument);
  CHECK(vtm().prefix(15) == "012021012102012"_w);
  CHECK(vtm().prefix(5000) == vtm_oracle(5000));
}

TEST_CASE("tau cubed matches the printed images") {
  const Morphism& t3 = tau_cubed();
  CHECK(t3.image(0) == "012021012102"_w);
  CHECK(t3.image(1) == "01202102"_w);
  CHECK(t3.image(2) == "0121"_w);
  CHECK(t3 == compose(tau(), compose(tau(), tau())));
  CHECK(apply(t3, vtm().prefix(100)) == vtm().prefix(apply(t3, vtm().prefix(100)).size()));
}

TEST_CASE("parse and print morphisms") {
  const auto m = Morphism::parse("# comment\n0 -> 012\n1 -> 02\n\n2 -> 1\n");
  CHECK(m == tau());
  CHECK(Morphism::parse(m.to_text()) == m);
  CHECK_THROWS_AS(Morphism::parse("0 -> 01\n0 -> 02\n"), ParseError);
  CHECK_THROWS_AS(Morphism::parse("0 -> 01\n2 -> 02\n"), ParseError);
  CHECK_THROWS_AS(Morphism::parse("0 = 01\n"), ParseError);
  CHECK_THROWS_AS(Morphism::parse("0 -> 0x1\n"), ParseError);
  CHECK_THROWS_AS(Morphism::parse("0 -> \n1 -> 1\n"), ParseError);
  CHECK_THROWS_AS(Morphism::from_file("/nonexistent/file.morph"), ParseError);
}

TEST_CASE("apply, compose, subsample") {
  const Morphism h({"0120"_w, "1201"_w, "2012"_w});
  CHECK(h.is_uniform());
  CHECK(h.uniform_length() == 4);
  CHECK(apply(h, "01"_w) == "01201201"_w);
  const Morphism h2 = subsample_morphism(h, 2);
  CHECK(h2.image(0) == "02"_w);
  CHECK(h2.image(1) == "10"_w);
  CHECK(h2.image(2) == "21"_w);
  CHECK_THROWS_AS(subsample_morphism(h, 3), std::invalid_argument);
  // Subsampling commutes with application for uniform h and p | n.
  const Word x = vtm().prefix(50);
  CHECK(subsample(apply(h, x), 2) == apply(h2, x));
  const Morphism g = compose(h, tau());
  CHECK(g.image(0) == apply(h, "012"_w));
}

TEST_CASE("conjugate and cyclic shift") {
  const Morphism h({"0120"_w, "0210"_w, "0"_w});
  const Morphism c = conjugate(h, 0);
  CHECK(c.image(0) == "1200"_w);
  CHECK(c.image(1) == "2100"_w);
  CHECK(c.image(2) == "0"_w);
  CHECK_THROWS_AS(conjugate(Morphism({"0"_w, "1"_w, "0"_w}), 0), std::invalid_argument);

  const Permutation pi = Permutation::cycle012();
  CHECK(pi(0) == 1);
  CHECK(pi(2) == 0);
  CHECK(pi.power(3) == Permutation::identity());
  CHECK(pi("0122"_w) == "1200"_w);
  const Morphism s = cyclic_shift_morphism("0121"_w, pi);
  CHECK(s.image(1) == "1202"_w);
  CHECK(s.image(2) == "2010"_w);
  // h o pi = pi o h letterwise.
  const Word x = vtm().prefix(40);
  CHECK(apply(s, pi(x)) == pi(apply(s, x)));
}

TEST_CASE("lcp and common affixes") {
  const Morphism h({"01201"_w, "01210"_w, "0121"_w});
  CHECK(lcp_of(h) == 3);
  CHECK(longest_common_prefix({"0120"_w, "0121"_w}) == 3);
  CHECK(longest_common_suffix({"20120"_w, "1120"_w}) == 3);
}

TEST_CASE("multi-valued morphisms") {
  const auto mm = MultiMorphism::parse("0 -> 01\n0 -> 012\n1 -> 1\n2 -> 2\n2 -> 20\n");
  CHECK(mm.alternatives(0).size() == 2);
  CHECK(mm.alternatives(1).size() == 1);
  const std::vector<std::size_t> choice{1, 0, 1};
  const Morphism m = mm.select(choice);
  CHECK(m.image(0) == "012"_w);
  CHECK(m.image(2) == "20"_w);
  CHECK(MultiMorphism::parse(mm.to_text()) == mm);
  const auto cs = cyclic_shift_multimorphism({"01"_w, "012"_w}, Permutation::cycle012());
  CHECK(cs.alternatives(1)[1] == "120"_w);
  CHECK(cs.alternatives(2)[0] == "20"_w);
}

TEST_CASE("fixed points need a prolongable letter") {
  CHECK_THROWS_AS(fixed_point(tau(), 1), std::invalid_argument);
  const Morphism h({"01"_w, "10"_w});
  CHECK(fixed_point(h, 0).prefix(8) == Word::parse("01101001", Alphabet(2)));
}
