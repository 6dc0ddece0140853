#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mg {

/// A finite group given by its full multiplication table. Element 0 is the
/// identity. The group axioms (identity, inverses, associativity) are
/// verified on construction.
class FiniteGroupTable {
 public:
  FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> mul);

  std::size_t order() const { return names_.size(); }
  const std::string& name(std::uint32_t e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a][b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

  bool is_abelian() const;

  /// Cyclic group of order m with element names "0".."m-1".
  static FiniteGroupTable cyclic(std::uint32_t m);

  /// JSON document {"order": n, "names": [...], "mul": [[...], ...]}.
  static FiniteGroupTable from_json_text(const std::string& text);
  static FiniteGroupTable load(const std::string& path);
  std::string to_json_text() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::uint32_t>> mul_;
  std::vector<std::uint32_t> inv_;
};

}  // namespace mg
