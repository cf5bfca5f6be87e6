#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trivia {

enum class ErrorKind {
  MalformedRecord,
  VoteInversion,
  DuplicateEntityConflict,
  DanglingHead,
  NoRoot,
  EmptyInput,
  ZeroVotes,
  EmptyAfterFilter,
  EmptyTrainingSet,
  NoWords,
  UnfrozenSpace,
  NoPairs,
  NonPositiveC,
  SpaceMismatch,
  MixedGroups,
  MissingLabels,
  SingleClassTraining,
  ZeroPositives,
  DegenerateMarginals,
  LengthMismatch,
  TooFewPairs,
  MissingGold,
  Io,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string_view detail,
        std::optional<std::size_t> line = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  /// 1-based input line for ingestion errors.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace trivia
