#pragma once

// Internal helpers shared by the JSONL readers.

#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "trivia/error.hpp"

namespace trivia::detail {

using Json = nlohmann::json;

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

/// Calls fn(object, line_number) for every non-blank line.
inline void for_each_json_line(
    std::istream& in, const std::function<void(const Json&, std::size_t)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json object;
    try {
      object = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::MalformedRecord, e.what(), number);
    }
    if (!object.is_object()) {
      throw Error(ErrorKind::MalformedRecord, "expected a JSON object", number);
    }
    fn(object, number);
  }
}

inline const Json& require(const Json& object, std::string_view key,
                           std::size_t line) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) {
    throw Error(ErrorKind::MalformedRecord,
                "missing key \"" + std::string(key) + "\"", line);
  }
  return *it;
}

inline std::string require_string(const Json& object, std::string_view key,
                                  std::size_t line) {
  const Json& v = require(object, key, line);
  if (!v.is_string()) {
    throw Error(ErrorKind::MalformedRecord,
                "\"" + std::string(key) + "\" must be a string", line);
  }
  return v.get<std::string>();
}

inline std::int64_t require_integer(const Json& object, std::string_view key,
                                    std::size_t line) {
  const Json& v = require(object, key, line);
  if (!v.is_number_integer()) {
    throw Error(ErrorKind::MalformedRecord,
                "\"" + std::string(key) + "\" must be an integer", line);
  }
  return v.get<std::int64_t>();
}

inline std::string optional_string(const Json& object, std::string_view key,
                                   std::string fallback, std::size_t line) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw Error(ErrorKind::MalformedRecord,
                "\"" + std::string(key) + "\" must be a string", line);
  }
  return it->get<std::string>();
}

}  // namespace trivia::detail
