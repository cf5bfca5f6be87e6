#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "trivia/error.hpp"
#include "trivia/features.hpp"

namespace trivia {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool has_space(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

}  // namespace

void write_letor(std::ostream& out, std::span<const FeatureVector> vectors) {
  for (const auto& v : vectors) {
    if (v.group_id.empty() || has_space(v.group_id)) {
      throw Error(ErrorKind::InvalidArgument,
                  "group id must be non-empty without whitespace: \"" +
                      v.group_id + "\"");
    }
    out << v.grade.value_or(0) << " qid:" << v.group_id;
    for (const auto& [index, value] : v.entries) {
      out << ' ' << (index + 1) << ':' << shortest(value);
    }
    if (!v.item_id.empty()) out << " # " << v.item_id;
    out << '\n';
  }
}

std::vector<FeatureVector> parse_letor(std::istream& in) {
  std::vector<FeatureVector> vectors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    FeatureVector v;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      std::string comment = line.substr(hash + 1);
      auto b = comment.find_first_not_of(' ');
      auto e = comment.find_last_not_of(' ');
      if (b != std::string::npos) v.item_id = comment.substr(b, e - b + 1);
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string grade;
    if (!(fields >> grade)) continue;
    auto bad = [&](const std::string& what) {
      return Error(ErrorKind::MalformedRecord, what, line_no);
    };
    int g = 0;
    auto [gp, gec] = std::from_chars(grade.data(), grade.data() + grade.size(), g);
    if (gec != std::errc{} || gp != grade.data() + grade.size()) {
      throw bad("grade is not an integer: " + grade);
    }
    v.grade = g;
    std::string qid;
    if (!(fields >> qid) || !qid.starts_with("qid:") || qid.size() == 4) {
      throw bad("missing qid");
    }
    v.group_id = qid.substr(4);
    std::string pair;
    while (fields >> pair) {
      auto colon = pair.find(':');
      if (colon == std::string::npos) throw bad("expected idx:val, got " + pair);
      unsigned long idx = 0;
      double value = 0.0;
      auto [ip, iec] = std::from_chars(pair.data(), pair.data() + colon, idx);
      auto [vp, vec] =
          std::from_chars(pair.data() + colon + 1, pair.data() + pair.size(), value);
      if (iec != std::errc{} || ip != pair.data() + colon || idx == 0 ||
          vec != std::errc{} || vp != pair.data() + pair.size()) {
        throw bad("bad feature " + pair);
      }
      const auto index = static_cast<std::uint32_t>(idx - 1);
      if (!v.entries.empty() && v.entries.back().first >= index) {
        throw bad("feature indices must be strictly increasing");
      }
      if (value != 0.0) v.entries.emplace_back(index, value);
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

std::vector<FeatureVector> load_letor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_letor(in);
}

}  // namespace trivia
