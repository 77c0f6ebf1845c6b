// Named morphisms shipped as asset files, and the checks tied to each.

#ifndef SQFW_CATALOG_HPP_
#define SQFW_CATALOG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqfw/morphism.hpp"
#include "sqfw/report.hpp"

namespace sqfw {

struct Expectations {
  // Image lengths per letter; for multi-valued entries, the lengths of the
  // alternatives of every letter.
  std::vector<std::size_t> image_lengths;
  std::optional<std::size_t> lcp;
  // Every image letter at a position = 0 (mod zero_modulus) is 0.
  std::optional<std::size_t> zero_modulus;
  bool ternary_sqf = false;
  bool ternary_sqf_fails = false;
  bool uniform_sqf = false;
  bool multi_sqf = false;
  bool theorem10 = false;
};

struct CatalogEntry {
  std::string name;
  std::string file;
  std::variant<Morphism, MultiMorphism> value;
  Expectations expect;
  std::uint64_t pinned_checksum = 0;
  std::uint64_t checksum = 0;
  bool checksum_ok() const { return checksum == pinned_checksum; }
};

std::uint64_t fnv1a64(std::string_view bytes);

// SQFW_ASSET_DIR if set, else the directory configured at build time.
std::filesystem::path default_asset_dir();

class Catalog {
 public:
  // Parses and structurally validates every entry. Parse errors name the
  // entry; checksum drift is recorded per entry rather than thrown.
  static Catalog load(const std::filesystem::path& dir = default_asset_dir());

  const CatalogEntry& entry(const std::string& name) const;
  const Morphism& morphism(const std::string& name) const;
  const MultiMorphism& multi(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, CatalogEntry> entries_;
};

// Moduli with a case morphism: 6, 7, 9, 10, 11, 13, 15, 17, 19, 23, 25, 29.
const std::vector<std::size_t>& case_moduli();

// Least case modulus dividing p (p >= 6), if any.
std::optional<std::size_t> progression_case(std::size_t p);

Report verify_entry(const CatalogEntry& e);
Report verify_case(const Catalog& catalog, std::size_t p);
Report verify_pair_3_11(const Catalog& catalog);
Report verify_pair_5_6(const Catalog& catalog);

// Prefix of h(vtm) for the least case m dividing p; [w]_p is all zero.
// Throws std::invalid_argument when no case divides p.
Word progression_word(const Catalog& catalog, std::size_t p, std::size_t len);

}  // namespace sqfw

#endif  // SQFW_CATALOG_HPP_
