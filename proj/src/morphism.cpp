#include "sqfw/morphism.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace sqfw {

namespace {

unsigned max_letter_plus_one(const std::vector<Word>& words) {
  unsigned m = 0;
  for (const auto& w : words) {
    for (Letter a : w) m = std::max<unsigned>(m, a + 1u);
  }
  return m;
}

Alphabet fit_alphabet(unsigned domain_size, unsigned image_bound) {
  return Alphabet(std::max({2u, domain_size, image_bound}));
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Parses "<letter> -> <digits>" lines shared by both morphism formats.
std::vector<std::pair<Letter, std::string>> parse_lines(std::string_view text) {
  std::vector<std::pair<Letter, std::string>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected '<letter> -> <image>'");
    }
    const auto lhs = trim(line.substr(0, arrow));
    const auto rhs = trim(line.substr(arrow + 2));
    if (lhs.size() != 1 || lhs[0] < '0' || lhs[0] > '3') {
      throw ParseError("line " + std::to_string(line_no) + ": bad letter '" + std::string(lhs) + "'");
    }
    for (char c : rhs) {
      if (c < '0' || c > '3') {
        throw ParseError("line " + std::to_string(line_no) + ": bad image letter '" +
                         std::string(1, c) + "'");
      }
    }
    out.emplace_back(static_cast<Letter>(lhs[0] - '0'), std::string(rhs));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Word to_word(const std::string& digits) {
  std::vector<Letter> letters;
  for (char c : digits) letters.push_back(static_cast<Letter>(c - '0'));
  return Word(std::move(letters), Alphabet(4));
}

Word retarget(const Word& w, Alphabet a) { return Word(std::vector<Letter>(w.begin(), w.end()), a); }

}  // namespace

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<Letter> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (Letter a : mapping_) {
    if (a >= mapping_.size() || seen[a]) throw std::invalid_argument("not a permutation");
    seen[a] = true;
  }
}

Permutation Permutation::identity(Alphabet alphabet) {
  std::vector<Letter> m(alphabet.size());
  for (unsigned i = 0; i < alphabet.size(); ++i) m[i] = static_cast<Letter>(i);
  return Permutation(std::move(m));
}

Permutation Permutation::cycle012() { return Permutation({1, 2, 0}); }

Word Permutation::operator()(const Word& w) const {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(mapping_.at(a));
  return Word(std::move(out), w.alphabet());
}

Permutation Permutation::power(unsigned k) const {
  std::vector<Letter> m(mapping_.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Letter a = static_cast<Letter>(i);
    for (unsigned j = 0; j < k; ++j) a = mapping_[a];
    m[i] = a;
  }
  return Permutation(std::move(m));
}

// ---------------------------------------------------------------------------

Morphism::Morphism(std::vector<Word> images, Alphabet target, bool allow_empty)
    : domain_(static_cast<unsigned>(images.size())), target_(target) {
  images_.reserve(images.size());
  for (std::size_t a = 0; a < images.size(); ++a) {
    if (images[a].empty() && !allow_empty) {
      throw std::invalid_argument("image of letter " + std::to_string(a) + " is empty");
    }
    images_.push_back(retarget(images[a], target_));
  }
}

Morphism::Morphism(std::vector<Word> images, bool allow_empty)
    : Morphism(images,
               fit_alphabet(static_cast<unsigned>(images.size()), max_letter_plus_one(images)),
               allow_empty) {}

Morphism Morphism::parse(std::string_view text) {
  std::map<Letter, Word> by_letter;
  for (auto& [letter, digits] : parse_lines(text)) {
    if (!by_letter.emplace(letter, to_word(digits)).second) {
      throw ParseError("letter " + std::to_string(letter) + " has more than one image");
    }
  }
  std::vector<Word> images;
  for (auto& [letter, image] : by_letter) {
    if (letter != images.size()) {
      throw ParseError("missing image for letter " + std::to_string(images.size()));
    }
    images.push_back(image);
  }
  if (images.size() < 2) throw ParseError("a morphism needs at least two letters");
  try {
    return Morphism(std::move(images));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Morphism Morphism::from_file(const std::filesystem::path& path) { return parse(read_file(path)); }

std::string Morphism::to_text() const {
  std::string out;
  for (std::size_t a = 0; a < images_.size(); ++a) {
    out += std::to_string(a) + " -> " + images_[a].str() + "\n";
  }
  return out;
}

Morphism Morphism::identity(Alphabet alphabet) {
  std::vector<Word> images;
  for (unsigned a = 0; a < alphabet.size(); ++a) {
    images.emplace_back(std::vector<Letter>{static_cast<Letter>(a)}, alphabet);
  }
  return Morphism(std::move(images), alphabet);
}

bool Morphism::is_uniform() const {
  return std::all_of(images_.begin(), images_.end(),
                     [&](const Word& w) { return w.size() == images_.front().size(); });
}

std::size_t Morphism::uniform_length() const {
  if (!is_uniform()) throw std::invalid_argument("morphism is not uniform");
  return images_.front().size();
}

std::size_t Morphism::max_image_length() const {
  std::size_t m = 0;
  for (const auto& w : images_) m = std::max(m, w.size());
  return m;
}

// ---------------------------------------------------------------------------

MultiMorphism::MultiMorphism(std::vector<std::vector<Word>> alternatives)
    : domain_(static_cast<unsigned>(alternatives.size())) {
  std::vector<Word> flat;
  for (std::size_t a = 0; a < alternatives.size(); ++a) {
    const auto& alts = alternatives[a];
    if (alts.empty()) throw std::invalid_argument("letter " + std::to_string(a) + " has no image");
    for (std::size_t i = 0; i < alts.size(); ++i) {
      if (alts[i].empty()) throw std::invalid_argument("empty alternative image");
      for (std::size_t j = 0; j < i; ++j) {
        if (alts[i] == alts[j]) {
          throw std::invalid_argument("duplicate alternative for letter " + std::to_string(a));
        }
      }
      flat.push_back(alts[i]);
    }
  }
  target_ = fit_alphabet(domain_.size(), max_letter_plus_one(flat));
  for (auto& alts : alternatives) {
    std::vector<Word> converted;
    for (auto& w : alts) converted.push_back(retarget(w, target_));
    alternatives_.push_back(std::move(converted));
  }
}

MultiMorphism MultiMorphism::parse(std::string_view text) {
  std::map<Letter, std::vector<Word>> by_letter;
  for (auto& [letter, digits] : parse_lines(text)) by_letter[letter].push_back(to_word(digits));
  std::vector<std::vector<Word>> alts;
  for (auto& [letter, images] : by_letter) {
    if (letter != alts.size()) {
      throw ParseError("missing image for letter " + std::to_string(alts.size()));
    }
    alts.push_back(images);
  }
  if (alts.size() < 2) throw ParseError("a multi-valued morphism needs at least two letters");
  try {
    return MultiMorphism(std::move(alts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

MultiMorphism MultiMorphism::from_file(const std::filesystem::path& path) {
  return parse(read_file(path));
}

std::string MultiMorphism::to_text() const {
  std::string out;
  for (std::size_t a = 0; a < alternatives_.size(); ++a) {
    for (const auto& w : alternatives_[a]) out += std::to_string(a) + " -> " + w.str() + "\n";
  }
  return out;
}

Morphism MultiMorphism::select(std::span<const std::size_t> choice) const {
  if (choice.size() != alternatives_.size()) throw std::invalid_argument("choice size mismatch");
  std::vector<Word> images;
  for (std::size_t a = 0; a < alternatives_.size(); ++a) images.push_back(alternatives_[a].at(choice[a]));
  return Morphism(std::move(images), target_);
}

// ---------------------------------------------------------------------------

Word apply(const Morphism& h, const Word& w) {
  std::vector<Letter> out;
  for (Letter a : w) {
    if (!h.domain().contains(a)) throw std::invalid_argument("letter outside morphism domain");
    const auto& img = h.image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out), h.target());
}

WordStream apply(const Morphism& h, const WordStream& w) {
  std::size_t consumed = 0;
  return WordStream(h.target(), [h, w, consumed](std::vector<Letter>& cache, std::size_t need) mutable {
    while (cache.size() < need) {
      const Letter a = w.at(consumed++);
      if (!h.domain().contains(a)) throw std::invalid_argument("letter outside morphism domain");
      const auto& img = h.image(a);
      cache.insert(cache.end(), img.begin(), img.end());
    }
  });
}

WordStream fixed_point(const Morphism& h, Letter a) {
  if (!h.domain().contains(a) || h.target() != h.domain()) {
    throw std::invalid_argument("fixed point needs an endomorphism over the letter's alphabet");
  }
  const Word& first = h.image(a);
  if (first.size() < 2 || first[0] != a) {
    throw std::invalid_argument("morphism is not prolongable on letter " + std::to_string(a));
  }
  // Images are appended in whole blocks: cache = h(w[0]) h(w[1]) ... h(w[next-1]).
  std::size_t next = 0;
  return WordStream(h.domain(), [h, a, next](std::vector<Letter>& cache, std::size_t need) mutable {
    if (cache.empty()) {
      const auto& img = h.image(a);
      cache.assign(img.begin(), img.end());
      next = 1;
    }
    while (cache.size() < need) {
      if (next >= cache.size()) throw std::logic_error("fixed point is finite");
      const Letter b = cache[next++];
      const auto& img = h.image(b);
      cache.insert(cache.end(), img.begin(), img.end());
    }
  });
}

Morphism compose(const Morphism& g, const Morphism& h) {
  if (h.target().size() > g.domain().size()) {
    throw std::invalid_argument("compose: image alphabet of h exceeds domain of g");
  }
  std::vector<Word> images;
  for (const auto& img : h.images()) images.push_back(apply(g, img));
  return Morphism(std::move(images), g.target());
}

Morphism subsample_morphism(const Morphism& h, std::size_t p) {
  if (p == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<Word> images;
  for (std::size_t a = 0; a < h.images().size(); ++a) {
    const auto& img = h.images()[a];
    if (img.size() % p != 0) {
      throw std::invalid_argument(std::to_string(p) + " does not divide |h(" + std::to_string(a) +
                                  ")| = " + std::to_string(img.size()));
    }
    images.push_back(subsample(img, p));
  }
  return Morphism(std::move(images), h.target());
}

Morphism conjugate(const Morphism& h, Letter c) {
  std::vector<Word> images;
  for (std::size_t a = 0; a < h.images().size(); ++a) {
    const auto& img = h.images()[a];
    if (img.empty() || img[0] != c) {
      throw std::invalid_argument("image of " + std::to_string(a) + " does not begin with " +
                                  std::to_string(c));
    }
    Word out = img.slice(1, img.size() - 1);
    out.push_back(c);
    images.push_back(std::move(out));
  }
  return Morphism(std::move(images), h.target());
}

Morphism cyclic_shift_morphism(const Word& image0, const Permutation& pi) {
  if (pi.size() != 3) throw std::invalid_argument("cyclic shift morphisms are ternary");
  const Word w0(std::vector<Letter>(image0.begin(), image0.end()), Alphabet::ternary());
  const Word w1 = pi(w0);
  const Word w2 = pi(w1);
  return Morphism({w0, w1, w2}, Alphabet::ternary());
}

MultiMorphism cyclic_shift_multimorphism(const std::vector<Word>& alternatives0,
                                         const Permutation& pi) {
  std::vector<std::vector<Word>> alts(3);
  for (const auto& w : alternatives0) {
    const Morphism m = cyclic_shift_morphism(w, pi);
    for (int a = 0; a < 3; ++a) alts[a].push_back(m.image(static_cast<Letter>(a)));
  }
  return MultiMorphism(std::move(alts));
}

std::size_t longest_common_prefix(const std::vector<Word>& words) {
  if (words.empty()) return 0;
  std::size_t n = words.front().size();
  for (const auto& w : words) {
    n = std::min(n, w.size());
    std::size_t i = 0;
    while (i < n && w[i] == words.front()[i]) ++i;
    n = i;
  }
  return n;
}

std::size_t longest_common_suffix(const std::vector<Word>& words) {
  if (words.empty()) return 0;
  const auto& f = words.front();
  std::size_t n = f.size();
  for (const auto& w : words) {
    n = std::min(n, w.size());
    std::size_t i = 0;
    while (i < n && w[w.size() - 1 - i] == f[f.size() - 1 - i]) ++i;
    n = i;
  }
  return n;
}

std::size_t lcp_of(const Morphism& h) { return longest_common_prefix(h.images()); }

const Morphism& tau() {
  static const Morphism t({Word{0, 1, 2}, Word{0, 2}, Word{1}}, Alphabet::ternary());
  return t;
}

const Morphism& tau_cubed() {
  static const Morphism t3 = [] {
    Morphism listed({Word::parse("012021012102"), Word::parse("01202102"), Word::parse("0121")},
                    Alphabet::ternary());
    if (!(compose(tau(), compose(tau(), tau())) == listed)) {
      throw std::logic_error("tau^3 does not match its listed images");
    }
    return listed;
  }();
  return t3;
}

WordStream vtm() {
  static const WordStream s = fixed_point(tau(), 0);
  return s;
}

}  // namespace sqfw
