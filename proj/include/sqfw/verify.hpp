// Squarefreeness verdicts for morphisms.
//
// The ternary and uniform tests are the two finite criteria (length-5 words
// for ternary domains, length-3 words for uniform morphisms). The vtm_cond*
// checks are the three sufficient conditions for g(vtm) to be squarefree.

#ifndef SQFW_VERIFY_HPP_
#define SQFW_VERIFY_HPP_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqfw/morphism.hpp"
#include "sqfw/word.hpp"

namespace sqfw {

struct Counterexample {
  Word input;
  Word image;
  std::optional<Square> square;  // set for squarefreeness failures
  std::string note;
};

struct Verdict {
  std::string test;
  bool pass = true;
  // First failure in (length, lexicographic) input order.
  std::optional<Counterexample> counterexample;
  // Every failing input, when the test enumerates a finite input set.
  std::vector<Counterexample> failures;
  std::string detail;

  void fail(Counterexample c);
};

// Inputs whose failure is not inherited from a failing proper factor.
std::vector<Word> minimal_counterexamples(const Verdict& v);

// Images of all squarefree ternary words of length <= 5. Requires a ternary domain.
Verdict ternary_sqf_test(const Morphism& h);

// Images of all squarefree words of length <= 3. Requires a uniform morphism.
Verdict uniform_sqf_test(const Morphism& h);

// Every choice of alternatives for every squarefree ternary word of length 5.
Verdict multi_sqf_test(const MultiMorphism& h);

// The length-5 factors of vtm: read from a 10^4 prefix, confirmed against 10^6.
const std::set<Word>& vtm_factors5();

Verdict vtm_cond1(const Morphism& g);

using LetterTriple = std::array<Letter, 3>;

struct Cond2Result {
  Verdict verdict;
  std::set<LetterTriple> solutions;
};

// All (a,b,c) admitting g(a)=uv, g(b)=zv, g(c)=zw with v != w and u != z.
// Passes iff the solution set is exactly {(0,1,0)}.
Cond2Result vtm_cond2(const Morphism& g);

struct CondThreeWitness {
  std::vector<Word> suffixes;  // v_a for each letter a; each a suffix of g(a)
  static CondThreeWitness uniform(const Word& v, std::size_t letters = 3) {
    return CondThreeWitness{std::vector<Word>(letters, v)};
  }
};

// Every occurrence of each v_a in g(w), w squarefree with |w| <= 4, ends at an
// image boundary of g(w) = g(w_0) g(w_1) ...
Verdict vtm_cond3(const Morphism& g, const CondThreeWitness& witness);

bool is_prime(std::size_t n);

// Uniform, prime length, squarefree, and 0 prefixes h(0) but neither h(1) nor h(2).
Verdict theorem10_premises(const Morphism& h);

struct ZeroProgressionReport {
  struct Entry {
    std::size_t modulus = 0;
    std::optional<std::size_t> refuted_at;  // least i with w[i*p] != 0
  };
  std::size_t bound = 0;
  std::vector<Entry> entries;
  bool all_refuted() const;
};

// For each 1 <= p <= max_modulus, the least i <= bound with w[i*p] != 0.
ZeroProgressionReport bounded_no_zero_ap(const WordStream& w, std::size_t max_modulus,
                                         std::size_t bound);

}  // namespace sqfw

#endif  // SQFW_VERIFY_HPP_
