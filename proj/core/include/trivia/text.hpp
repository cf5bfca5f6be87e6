#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trivia {

/// NFC-normalizes UTF-8 text, collapses whitespace runs to one space and
/// trims both ends. Invalid byte sequences become U+FFFD.
std::string normalize_text(std::string_view text);

/// Full Unicode lowercase (root locale).
std::string unicode_lower(std::string_view text);

/// True when the text contains at least one letter or digit code point.
bool has_alnum(std::string_view text);

/// True for a non-empty token made only of punctuation/symbol code points.
bool is_punctuation_token(std::string_view token);

bool is_capitalized(std::string_view token);

/// Lowercased abbreviations whose final period never ends a sentence and is
/// never split off a token ("mr.", "u.s.", ...).
std::span<const std::string_view> known_abbreviations();
bool is_known_abbreviation(std::string_view token);

/// Whitespace + punctuation tokenization used by the fallback annotator and
/// for building entity match keys. Leading/trailing punctuation is split
/// into single-character tokens, a trailing "'s" becomes its own token, and
/// currency-prefixed amounts ("$274,092,705") stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// Case-insensitive, whitespace-normalized key for exact entity matching.
std::string match_key(std::string_view text);
std::string match_key(std::span<const std::string> tokens);

std::string join(std::span<const std::string> parts, std::string_view sep);

std::string sha256_hex(std::string_view data);

}  // namespace trivia
