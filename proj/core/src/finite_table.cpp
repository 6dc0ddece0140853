#include "mg/finite_table.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mg/errors.hpp"

namespace mg {

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> names,
                                   std::vector<std::vector<std::uint32_t>> mul)
    : names_(std::move(names)), mul_(std::move(mul)) {
  const std::size_t n = names_.size();
  if (n == 0) throw PreconditionError("group table must have at least the identity");
  if (mul_.size() != n) throw PreconditionError("mul matrix row count != order");
  for (const auto& row : mul_) {
    if (row.size() != n) throw PreconditionError("mul matrix column count != order");
    for (const auto e : row)
      if (e >= n) throw PreconditionError("mul matrix entry out of range");
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (mul_[0][i] != i || mul_[i][0] != i)
      throw PreconditionError("element 0 is not a two-sided identity");
  }
  inv_.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (mul_[a][b] == 0) {
        if (mul_[b][a] != 0)
          throw PreconditionError("one-sided inverse for element " + std::to_string(a));
        if (found) throw PreconditionError("multiple inverses for element " + std::to_string(a));
        inv_[a] = b;
        found = true;
      }
    }
    if (!found) throw PreconditionError("no inverse for element " + std::to_string(a));
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
          throw PreconditionError("multiplication table is not associative");
}

bool FiniteGroupTable::is_abelian() const {
  const std::size_t n = order();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (mul_[a][b] != mul_[b][a]) return false;
  return true;
}

FiniteGroupTable FiniteGroupTable::cyclic(std::uint32_t m) {
  std::vector<std::string> names;
  std::vector<std::vector<std::uint32_t>> mul(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t i = 0; i < m; ++i) {
    names.push_back(std::to_string(i));
    for (std::uint32_t j = 0; j < m; ++j) mul[i][j] = (i + j) % m;
  }
  return FiniteGroupTable(std::move(names), std::move(mul));
}

FiniteGroupTable FiniteGroupTable::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("names") || !doc.contains("mul"))
    throw ParseError("group table document needs fields 'order', 'names', 'mul'");
  const auto order = doc["order"].get<std::size_t>();
  auto names = doc["names"].get<std::vector<std::string>>();
  auto mul = doc["mul"].get<std::vector<std::vector<std::uint32_t>>>();
  if (names.size() != order) throw ParseError("'names' length != order");
  if (mul.size() != order) throw ParseError("'mul' row count != order");
  return FiniteGroupTable(std::move(names), std::move(mul));
}

FiniteGroupTable FiniteGroupTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group table file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string FiniteGroupTable::to_json_text() const {
  nlohmann::ordered_json doc;
  doc["order"] = order();
  doc["names"] = names_;
  doc["mul"] = mul_;
  return doc.dump();
}

}  // namespace mg
