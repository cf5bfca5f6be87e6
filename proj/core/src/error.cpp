#include "trivia/error.hpp"

namespace trivia {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::VoteInversion: return "VoteInversion";
    case ErrorKind::DuplicateEntityConflict: return "DuplicateEntityConflict";
    case ErrorKind::DanglingHead: return "DanglingHead";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ZeroVotes: return "ZeroVotes";
    case ErrorKind::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::NoWords: return "NoWords";
    case ErrorKind::UnfrozenSpace: return "UnfrozenSpace";
    case ErrorKind::NoPairs: return "NoPairs";
    case ErrorKind::NonPositiveC: return "NonPositiveC";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::MixedGroups: return "MixedGroups";
    case ErrorKind::MissingLabels: return "MissingLabels";
    case ErrorKind::SingleClassTraining: return "SingleClassTraining";
    case ErrorKind::ZeroPositives: return "ZeroPositives";
    case ErrorKind::DegenerateMarginals: return "DegenerateMarginals";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooFewPairs: return "TooFewPairs";
    case ErrorKind::MissingGold: return "MissingGold";
    case ErrorKind::Io: return "Io";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, std::string_view detail,
                           std::optional<std::size_t> line) {
  std::string msg(to_string(kind));
  if (line) msg += " (line " + std::to_string(*line) + ")";
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, std::string_view detail,
             std::optional<std::size_t> line)
    : std::runtime_error(format_message(kind, detail, line)),
      kind_(kind),
      line_(line) {}

}  // namespace trivia
