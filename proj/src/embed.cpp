#include "sqfw/embed.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sqfw/catalog.hpp"

namespace sqfw {

namespace {
constexpr std::size_t prefix_len = 12;
constexpr std::size_t suffix_len = 9;
constexpr std::size_t min_image = 23;
constexpr unsigned full_alt = 3;
}  // namespace

PositionSpec PositionSpec::arithmetic(std::size_t p0, std::size_t step) {
  if (step < min_embed_gap) {
    throw std::invalid_argument("position gaps must be at least 30, got step " + std::to_string(step));
  }
  PositionSpec s;
  s.gen_ = [p0, step](std::size_t i) { return p0 + i * step; };
  return s;
}

PositionSpec PositionSpec::list(std::vector<std::size_t> positions) {
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] <= positions[i - 1] || positions[i] - positions[i - 1] < min_embed_gap) {
      throw std::invalid_argument("positions " + std::to_string(positions[i - 1]) + " and " +
                                  std::to_string(positions[i]) + " are closer than 30");
    }
  }
  PositionSpec s;
  s.size_ = positions.size();
  s.gen_ = [p = std::move(positions)](std::size_t i) { return p.at(i); };
  return s;
}

PositionSpec PositionSpec::parse(std::string_view text) {
  std::string t(text);
  if (t.rfind("arith:", 0) == 0) {
    const auto body = t.substr(6);
    const auto comma = body.find(',');
    const auto digits = [&](const std::string& x) {
      if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("expected arith:p0,step, got '" + t + "'");
      }
      return static_cast<std::size_t>(std::stoull(x));
    };
    if (comma == std::string::npos) throw ParseError("expected arith:p0,step, got '" + t + "'");
    return arithmetic(digits(body.substr(0, comma)), digits(body.substr(comma + 1)));
  }
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::size_t> positions;
  for (std::string tok; in >> tok;) {
    if (tok.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad position '" + tok + "'");
    }
    positions.push_back(std::stoull(tok));
  }
  return list(std::move(positions));
}

PositionSpec PositionSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::size_t PositionSpec::at(std::size_t i) const {
  if (size_ && i >= *size_) throw std::out_of_range("position index out of range");
  return gen_(i);
}

std::optional<std::size_t> PositionSpec::size() const { return size_; }

std::vector<std::size_t> PositionSpec::below(std::size_t bound) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; !size_ || i < *size_; ++i) {
    const std::size_t p = gen_(i);
    if (p >= bound) break;
    out.push_back(p);
  }
  return out;
}

Embedder::Embedder(MultiMorphism h) : h_(std::move(h)) {
  if (h_.domain().size() != 3) throw std::invalid_argument("embedding morphism must be ternary");
  const Permutation pi = Permutation::cycle012();
  for (Letter a = 0; a < 3; ++a) {
    const auto& alts = h_.alternatives(a);
    if (alts.size() != 4) throw std::invalid_argument("each letter needs four alternatives");
    for (std::size_t i = 0; i < 4; ++i) {
      if (alts[i].size() != min_image + i) {
        throw std::invalid_argument("alternatives must have lengths 23, 24, 25, 26 in order");
      }
      if (h_.alternatives(pi(a))[i] != pi(alts[i])) {
        throw std::invalid_argument("morphism does not commute with the cyclic shift");
      }
    }
    if (longest_common_prefix(alts) < prefix_len || longest_common_suffix(alts) < suffix_len) {
      throw std::invalid_argument("alternatives must share a 12-letter prefix and 9-letter suffix");
    }
  }
}

const Embedder& Embedder::standard() {
  static const Embedder e(MultiMorphism::from_file(default_asset_dir() / "multi_embed.mmorph"));
  return e;
}

Word Embedder::base_word(std::size_t len) const {
  const Word pre = vtm().prefix(len / (min_image + full_alt) + 1);
  std::vector<Letter> out;
  out.reserve(len + 26);
  for (Letter a : pre) {
    const auto& img = h_.alternatives(a)[full_alt];
    out.insert(out.end(), img.begin(), img.end());
  }
  out.resize(len);
  return Word(std::move(out));
}

EmbedResult Embedder::force_subsequence(const PositionSpec& spec, const WordStream& v,
                                        std::size_t len) const {
  EmbedResult res;
  const auto pos = spec.below(len);
  const std::size_t n_pre = len / min_image + 2;
  Word pre = vtm().prefix(n_pre);
  std::vector<unsigned> choice(n_pre, full_alt);

  auto want = [&](std::size_t i) {
    const Letter a = v.at(i);
    if (a > 2) throw std::invalid_argument("v must be a ternary word");
    return a;
  };

  if (!pos.empty()) {
    const std::size_t full = min_image + full_alt;
    const Letter b = h_.alternatives(pre[pos[0] / full])[full_alt][pos[0] % full];
    res.rotation = (want(0) + 3 - b) % 3;
    pre = Permutation::cycle012().power(res.rotation)(pre);
  }

  auto image_len = [&](std::size_t k) { return min_image + choice[k]; };
  auto letter = [&](std::size_t k, std::size_t off) {
    return h_.alternatives(pre[k])[choice[k]][off];
  };

  // Image containing pos[i-1]; images before it never change again.
  std::size_t cur_k = 0, cur_s = 0;
  auto at = [&](std::size_t q) {
    std::size_t k = cur_k, s = cur_s;
    while (s + image_len(k) <= q) s += image_len(k++);
    return letter(k, q - s);
  };

  for (std::size_t i = 1; i < pos.size(); ++i) {
    const std::size_t prev = pos[i - 1], q = pos[i];
    while (cur_s + image_len(cur_k) <= prev) cur_s += image_len(cur_k++);
    const Letter target = want(i);
    if (at(q) == target) continue;

    unsigned d = 0;
    for (unsigned t = 1; t <= 3; ++t) {
      if (at(q + t) == target) {
        d = t;
        break;
      }
    }
    if (d == 0) throw std::logic_error("no window letter matches; the word is not squarefree");

    std::size_t k = cur_k, s = cur_s;
    bool swapped = false;
    while (s + prefix_len <= q) {
      const std::size_t mid_start = s + prefix_len;
      const std::size_t mid_last = mid_start + (image_len(k) - prefix_len - suffix_len) - 1;
      if (choice[k] == full_alt && mid_start > prev && mid_last <= q) {
        res.swaps.push_back({k, full_alt, full_alt - d, d, q});
        choice[k] = full_alt - d;
        swapped = true;
        break;
      }
      s += image_len(k++);
    }
    if (!swapped) {
      throw std::logic_error("no complete middle block between positions " + std::to_string(prev) +
                             " and " + std::to_string(q));
    }
    if (at(q) != target) throw std::logic_error("swap did not place the letter");
  }

  std::vector<Letter> out;
  out.reserve(n_pre * 26);
  for (std::size_t k = 0; k < n_pre && out.size() < len; ++k) {
    const auto& img = h_.alternatives(pre[k])[choice[k]];
    out.insert(out.end(), img.begin(), img.end());
  }
  if (out.size() < len) throw std::logic_error("preimage too short");
  out.resize(len);
  res.word = Word(std::move(out));
  return res;
}

bool verify_embedding(const Word& w, const PositionSpec& spec, const WordStream& v) {
  if (!is_squarefree(w)) return false;
  const auto pos = spec.below(w.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (w[pos[i]] != v.at(i)) return false;
  }
  return true;
}

}  // namespace sqfw
