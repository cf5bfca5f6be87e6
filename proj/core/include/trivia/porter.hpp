#pragma once

#include <string>
#include <string_view>

namespace trivia {

/// Classic Porter stemmer (the reference C formulation, including its
/// "bli" -> "ble" and "logi" -> "log" step-2 rules). Expects a lowercase
/// word; words containing anything other than a-z, or of length <= 2, are
/// returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace trivia
