#include "trivia/text.hpp"

#include <openssl/evp.h>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

#include "trivia/error.hpp"

namespace trivia {

namespace {

// Decodes one code point starting at offset; advances offset.
UChar32 next_code_point(std::string_view s, std::size_t& offset) {
  UChar32 c = 0;
  auto i = static_cast<int32_t>(offset);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i,
          static_cast<int32_t>(s.size()), c);
  offset = static_cast<std::size_t>(i);
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> code_point_bounds(
    std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> bounds;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t begin = pos;
    next_code_point(s, pos);
    bounds.emplace_back(begin, pos);
  }
  return bounds;
}

bool is_peelable(UChar32 c) { return c >= 0 && u_ispunct(c); }

constexpr std::array<std::string_view, 14> kAbbreviations = {
    "mr.", "mrs.", "ms.", "dr.", "st.", "vs.", "etc.",
    "e.g.", "i.e.", "u.s.", "jr.", "sr.", "prof.", "mt."};

}  // namespace

std::string normalize_text(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::Io, "ICU NFC normalizer unavailable");
  }
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized = nfc->normalize(src, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::MalformedRecord, "text cannot be NFC-normalized");
  }

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < normalized.length();) {
    UChar32 c = normalized.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<char16_t>(u' '));
      pending_space = false;
    }
    collapsed.append(c);
  }
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

std::string unicode_lower(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

bool has_alnum(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    UChar32 c = next_code_point(text, pos);
    if (c >= 0 && u_isalnum(c)) return true;
  }
  return false;
}

bool is_punctuation_token(std::string_view token) {
  return !token.empty() && !has_alnum(token);
}

bool is_capitalized(std::string_view token) {
  std::size_t pos = 0;
  if (token.empty()) return false;
  UChar32 c = next_code_point(token, pos);
  return c >= 0 && u_isupper(c);
}

std::span<const std::string_view> known_abbreviations() {
  return kAbbreviations;
}

bool is_known_abbreviation(std::string_view token) {
  std::string lower = unicode_lower(token);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
           text[end] != '\n' && text[end] != '\r') {
      ++end;
    }
    if (end == pos) break;
    std::string_view chunk = text.substr(pos, end - pos);
    pos = end;

    if (is_known_abbreviation(chunk)) {
      tokens.emplace_back(chunk);
      continue;
    }

    auto cps = code_point_bounds(chunk);
    std::size_t first = 0;
    std::size_t last = cps.size();
    while (first < last) {
      std::size_t off = cps[first].first;
      UChar32 c = next_code_point(chunk, off);
      if (!is_peelable(c)) break;
      tokens.emplace_back(chunk.substr(cps[first].first,
                                       cps[first].second - cps[first].first));
      ++first;
    }
    std::vector<std::string> trailing;
    while (last > first) {
      std::size_t off = cps[last - 1].first;
      UChar32 c = next_code_point(chunk, off);
      if (!is_peelable(c)) break;
      trailing.emplace_back(chunk.substr(
          cps[last - 1].first, cps[last - 1].second - cps[last - 1].first));
      --last;
    }
    if (first < last) {
      std::string_view core = chunk.substr(
          cps[first].first, cps[last - 1].second - cps[first].first);
      std::string_view clitic;
      for (std::string_view suffix : {std::string_view("'s"),
                                      std::string_view("’s")}) {
        if (core.size() > suffix.size() && core.ends_with(suffix)) {
          clitic = core.substr(core.size() - suffix.size());
          core = core.substr(0, core.size() - suffix.size());
          break;
        }
      }
      tokens.emplace_back(core);
      if (!clitic.empty()) tokens.emplace_back(clitic);
    }
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

std::string match_key(std::string_view text) {
  auto tokens = tokenize(normalize_text(text));
  return match_key(tokens);
}

std::string match_key(std::span<const std::string> tokens) {
  return unicode_lower(join(tokens, " "));
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace trivia
