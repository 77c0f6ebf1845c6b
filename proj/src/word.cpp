#include "sqfw/word.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>

namespace sqfw {

Alphabet::Alphabet(unsigned size) : size_(size) {
  if (size < 2 || size > 4) {
    throw std::invalid_argument("alphabet size must be in [2, 4], got " + std::to_string(size));
  }
}

Word::Word(std::vector<Letter> letters, Alphabet alphabet)
    : letters_(std::move(letters)), alphabet_(alphabet) {
  for (Letter a : letters_) {
    if (!alphabet_.contains(a)) {
      throw std::invalid_argument("letter " + std::to_string(a) + " outside alphabet of size " +
                                  std::to_string(alphabet_.size()));
    }
  }
}

Word::Word(std::initializer_list<Letter> letters, Alphabet alphabet)
    : Word(std::vector<Letter>(letters), alphabet) {}

Word Word::parse(std::string_view digits, Alphabet alphabet) {
  std::vector<Letter> letters;
  letters.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    char c = digits[i];
    if (c < '0' || c > '9' || !alphabet.contains(static_cast<unsigned>(c - '0'))) {
      throw ParseError("invalid letter '" + std::string(1, c) + "' at offset " +
                       std::to_string(i));
    }
    letters.push_back(static_cast<Letter>(c - '0'));
  }
  return Word(std::move(letters), alphabet);
}

std::string Word::str() const {
  std::string s(letters_.size(), '0');
  for (std::size_t i = 0; i < letters_.size(); ++i) s[i] = static_cast<char>('0' + letters_[i]);
  return s;
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, letters_.size());
  len = std::min(len, letters_.size() - pos);
  return Word(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len), alphabet_);
}

bool Word::starts_with(const Word& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.begin(), prefix.end(), begin());
}

bool Word::ends_with(const Word& suffix) const {
  return suffix.size() <= size() &&
         std::equal(suffix.begin(), suffix.end(), end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

void Word::push_back(Letter a) {
  if (!alphabet_.contains(a)) throw std::invalid_argument("letter outside alphabet");
  letters_.push_back(a);
}

Word& Word::operator+=(const Word& other) {
  if (other.alphabet_.size() > alphabet_.size()) {
    for (Letter a : other) {
      if (!alphabet_.contains(a)) throw std::invalid_argument("letter outside alphabet");
    }
  }
  letters_.insert(letters_.end(), other.begin(), other.end());
  return *this;
}

// ---------------------------------------------------------------------------
// Square detection
// ---------------------------------------------------------------------------

namespace {

bool equal_blocks(const Letter* a, const Letter* b, std::size_t len) {
  return std::equal(a, a + len, b);
}

std::optional<std::size_t> square_ending_at(const Letter* w, std::size_t e) {
  if (e < 2) return std::nullopt;
  const Letter last = w[e - 1];
  for (std::size_t p = 1; 2 * p <= e; ++p) {
    if (w[e - 1 - p] == last && equal_blocks(w + e - 2 * p, w + e - p, p)) return p;
  }
  return std::nullopt;
}

bool has_square_naive(const Letter* w, std::size_t n) {
  for (std::size_t e = 2; e <= n; ++e) {
    if (square_ending_at(w, e)) return true;
  }
  return false;
}

constexpr Letter kSeparator = 0xff;

std::vector<std::uint32_t> z_function(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> z(n, 0);
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = 0;
    if (i < r) k = std::min<std::size_t>(r - i, z[i - l]);
    while (i + k < n && s[k] == s[i + k]) ++k;
    z[i] = static_cast<std::uint32_t>(k);
    if (i + k > r) {
      l = i;
      r = i + k;
    }
  }
  if (n > 0) z[0] = static_cast<std::uint32_t>(n);
  return z;
}

// Existence of a square in s[0, n) that straddles the cut between s[0, nu)
// and s[nu, n). For each period l the square's match run (positions x with
// s[x] == s[x+l]) contains either nu or nu-l; the run length around that
// anchor is assembled from one forward and one backward extension.
bool has_crossing_square(const Letter* s, std::size_t n, std::size_t nu) {
  const std::size_t nv = n - nu;

  std::vector<Letter> rev_u(s, s + nu);
  std::reverse(rev_u.begin(), rev_u.end());
  std::vector<Letter> v(s + nu, s + n);

  // Anchor nu: forward within v, backward across into u.
  {
    const auto zv = z_function(v);
    std::vector<Letter> buf(rev_u);
    buf.push_back(kSeparator);
    buf.insert(buf.end(), std::make_reverse_iterator(s + n), std::make_reverse_iterator(s));
    const auto zb = z_function(buf);
    for (std::size_t l = 1; l < nv; ++l) {
      const std::size_t forward = zv[l];
      const std::size_t k = n - nu - l;  // index of s[nu+l-1] in reversed s
      const std::size_t backward = zb[nu + 1 + k];
      if (forward + backward >= l) return true;
    }
  }
  // Anchor nu-l: forward compared against v, backward within u.
  {
    std::vector<Letter> buf(v);
    buf.push_back(kSeparator);
    buf.insert(buf.end(), s, s + n);
    const auto zf = z_function(buf);
    const auto zru = z_function(rev_u);
    for (std::size_t l = 1; l <= nu; ++l) {
      const std::size_t forward = zf[nv + 1 + (nu - l)];
      const std::size_t backward = l < nu ? zru[l] : 0;
      if (forward + backward >= l) return true;
    }
  }
  return false;
}

bool has_square(const Letter* s, std::size_t n) {
  if (n < 48) return has_square_naive(s, n);
  const std::size_t nu = n / 2;
  return has_square(s, nu) || has_square(s + nu, n - nu) || has_crossing_square(s, n, nu);
}

}  // namespace

std::optional<Square> find_square_naive(std::span<const Letter> w) {
  for (std::size_t e = 2; e <= w.size(); ++e) {
    if (auto p = square_ending_at(w.data(), e)) return Square{e - 2 * *p, *p};
  }
  return std::nullopt;
}

std::optional<Square> find_square(std::span<const Letter> w) {
  if (w.size() < 128) return find_square_naive(w);
  if (!has_square(w.data(), w.size())) return std::nullopt;
  // Shortest non-squarefree prefix; its squares all end at its last letter.
  std::size_t lo = 2, hi = w.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (has_square(w.data(), mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const auto p = square_ending_at(w.data(), lo);
  return Square{lo - 2 * *p, *p};
}

bool is_squarefree(std::span<const Letter> w) { return !has_square(w.data(), w.size()); }

std::optional<std::size_t> square_ending_at_end(std::span<const Letter> w) {
  return square_ending_at(w.data(), w.size());
}

// ---------------------------------------------------------------------------
// WordStream
// ---------------------------------------------------------------------------

struct WordStream::State {
  std::mutex mutex;
  std::vector<Letter> cache;
  Extender extender;
};

WordStream::WordStream(Alphabet alphabet, Extender extender)
    : alphabet_(alphabet), state_(std::make_shared<State>()) {
  state_->extender = std::move(extender);
}

std::vector<Letter> WordStream::materialize(std::size_t n) const {
  std::lock_guard lock(state_->mutex);
  auto& cache = state_->cache;
  if (cache.size() < n) {
    const std::size_t before = cache.size();
    state_->extender(cache, n);
    if (cache.size() < n) throw std::logic_error("word stream extender fell short");
    for (std::size_t i = before; i < cache.size(); ++i) {
      if (!alphabet_.contains(cache[i])) {
        cache.resize(before);
        throw std::logic_error("word stream produced a letter outside its alphabet");
      }
    }
  }
  return std::vector<Letter>(cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(n));
}

Letter WordStream::at(std::size_t i) const {
  {
    std::lock_guard lock(state_->mutex);
    if (i < state_->cache.size()) return state_->cache[i];
  }
  return materialize(i + 1)[i];
}

Word WordStream::prefix(std::size_t n) const { return Word(materialize(n), alphabet_); }

std::size_t WordStream::cached() const {
  std::lock_guard lock(state_->mutex);
  return state_->cache.size();
}

WordStream WordStream::from_function(Alphabet alphabet, std::function<Letter(std::size_t)> f) {
  return WordStream(alphabet, [f = std::move(f)](std::vector<Letter>& cache, std::size_t need) {
    while (cache.size() < need) cache.push_back(f(cache.size()));
  });
}

WordStream WordStream::constant(Letter a, Alphabet alphabet) {
  if (!alphabet.contains(a)) throw std::invalid_argument("letter outside alphabet");
  return from_function(alphabet, [a](std::size_t) { return a; });
}

WordStream WordStream::periodic(const Word& period) {
  if (period.empty()) throw std::invalid_argument("periodic stream needs a nonempty period");
  return from_function(period.alphabet(), [period](std::size_t i) { return period[i % period.size()]; });
}

std::string serialize_prefix(const WordStream& w, std::size_t n) {
  return std::to_string(n) + ":" + w.prefix(n).str();
}

Word parse_serialized_prefix(std::string_view text, Alphabet alphabet) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("serialized prefix lacks ':'");
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + colon, n);
  if (ec != std::errc() || ptr != text.data() + colon) throw ParseError("bad prefix length");
  Word w = Word::parse(text.substr(colon + 1), alphabet);
  if (w.size() != n) throw ParseError("prefix length does not match digit count");
  return w;
}

// ---------------------------------------------------------------------------
// Subsequences
// ---------------------------------------------------------------------------

Word subsample(const Word& w, std::size_t p, std::size_t offset) {
  if (p == 0) throw std::invalid_argument("subsample modulus must be positive");
  std::vector<Letter> out;
  for (std::size_t i = offset; i < w.size(); i += p) out.push_back(w[i]);
  return Word(std::move(out), w.alphabet());
}

WordStream subsample(const WordStream& w, std::size_t p, std::size_t offset) {
  if (p == 0) throw std::invalid_argument("subsample modulus must be positive");
  return WordStream(w.alphabet(), [w, p, offset](std::vector<Letter>& cache, std::size_t need) {
    const Word src = w.prefix(offset + (need - 1) * p + 1);
    for (std::size_t i = cache.size(); i < need; ++i) cache.push_back(src[offset + i * p]);
  });
}

WordStream subsequence(const WordStream& w, IndexSequence positions) {
  return WordStream(w.alphabet(), [w, positions = std::move(positions)](std::vector<Letter>& cache,
                                                                          std::size_t need) {
    std::vector<std::size_t> idx;
    for (std::size_t i = cache.size(); i < need; ++i) {
      idx.push_back(positions(i));
      const std::size_t prev = i > 0 ? positions(i - 1) : 0;
      if (i > 0 && idx.back() <= prev) {
        throw std::invalid_argument("subsequence positions must be strictly increasing");
      }
    }
    const Word src = w.prefix(idx.back() + 1);
    for (std::size_t pos : idx) cache.push_back(src[pos]);
  });
}

Word subsequence(const Word& w, std::span<const std::size_t> positions) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0 && positions[i] <= positions[i - 1]) {
      throw std::invalid_argument("subsequence positions must be strictly increasing");
    }
    if (positions[i] >= w.size()) break;
    out.push_back(w[positions[i]]);
  }
  return Word(std::move(out), w.alphabet());
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

std::vector<Word> enumerate_squarefree(Alphabet alphabet, std::size_t n, std::size_t max_words) {
  std::vector<Word> out;
  if (n == 0) {
    out.emplace_back(std::vector<Letter>{}, alphabet);
    return out;
  }
  std::vector<Letter> w;
  w.reserve(n);
  std::vector<unsigned> next(n + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (next[depth] >= alphabet.size()) {
      if (depth == 0) break;
      --depth;
      w.pop_back();
      continue;
    }
    w.push_back(static_cast<Letter>(next[depth]++));
    if (square_ending_at(w.data(), w.size())) {
      w.pop_back();
      continue;
    }
    if (w.size() == n) {
      if (out.size() >= max_words) {
        throw ResourceLimitError("enumeration of squarefree words of length " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(max_words));
      }
      out.emplace_back(w, alphabet);
      w.pop_back();
      continue;
    }
    ++depth;
    next[depth] = 0;
  }
  return out;
}

std::set<Word> factors(const Word& w, std::size_t n) {
  if (n > w.size()) throw std::invalid_argument("factor length exceeds word length");
  std::set<Word> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.slice(i, n));
  return out;
}

}  // namespace sqfw
