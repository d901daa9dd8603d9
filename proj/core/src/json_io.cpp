#include "loopforge/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "loopforge/constructions.hpp"

namespace loopforge {

using ojson = nlohmann::ordered_json;

std::string LoopToJson(const FiniteLoop& loop) {
  ojson j;
  j["order"] = loop.order();
  j["elements"] = loop.names();
  j["table"] = loop.Table();
  return j.dump() + "\n";
}

FiniteLoop LoopFromJson(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!j.is_object() || !j.contains("order") || !j.contains("elements") || !j.contains("table"))
    throw Error(ErrorCode::kParse, "expected keys order, elements, table");
  try {
    auto n = j.at("order").get<std::size_t>();
    auto names = j.at("elements").get<std::vector<std::string>>();
    const ojson& rows = j.at("table");
    if (names.size() != n || !rows.is_array() || rows.size() != n)
      throw Error(ErrorCode::kParse, "order does not match elements/table size");
    std::vector<std::vector<Elt>> table;
    table.reserve(n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) throw Error(ErrorCode::kParse, "table row has wrong length");
      std::vector<Elt> r;
      r.reserve(n);
      for (const auto& v : row) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::uint64_t>() >= n)
          throw Error(ErrorCode::kParse, "table entry out of range");
        r.push_back(v.get<Elt>());
      }
      table.push_back(std::move(r));
    }
    return FiniteLoop::FromTable(std::move(names), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

void SaveLoop(const FiniteLoop& loop, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParse, "cannot write " + path);
  out << LoopToJson(loop);
}

FiniteLoop LoadLoop(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return LoopFromJson(ss.str());
}

FiniteLoop ResolveLoop(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return LoadLoop(arg);
  return BuiltinLoop(arg);
}

}  // namespace loopforge
