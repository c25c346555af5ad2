#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace storycut {

enum class ErrorKind {
  MissingFile,
  ParseError,
  DanglingReference,
  NonMonotoneTimeline,
  UncoveredTurn,
  UnknownCharacter,
  EmptyStoryline,
  SceneOutsideStoryline,
  ShapeMismatch,
  MissingHistograms,
  UndefinedSocialRelevance,
  TooLarge,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::NonMonotoneTimeline: return "NonMonotoneTimeline";
    case ErrorKind::UncoveredTurn: return "UncoveredTurn";
    case ErrorKind::UnknownCharacter: return "UnknownCharacter";
    case ErrorKind::EmptyStoryline: return "EmptyStoryline";
    case ErrorKind::SceneOutsideStoryline: return "SceneOutsideStoryline";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MissingHistograms: return "MissingHistograms";
    case ErrorKind::UndefinedSocialRelevance: return "UndefinedSocialRelevance";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

// Kinds raised while ingesting corpus files; everything else is raised during
// computation. The CLI maps the two classes to different exit codes.
inline bool is_validation_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::MissingFile:
    case ErrorKind::ParseError:
    case ErrorKind::DanglingReference:
    case ErrorKind::NonMonotoneTimeline:
    case ErrorKind::UncoveredTurn:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  // For reference errors: subject names the kind of entity ("scene", "shot")
  // and id the unresolved ordinal.
  Error(ErrorKind kind, const std::string& message, std::string subject, std::int64_t id)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        subject_(std::move(subject)),
        id_(id) {}

  ErrorKind kind() const { return kind_; }
  const std::string& subject() const { return subject_; }
  std::int64_t id() const { return id_; }

 private:
  ErrorKind kind_;
  std::string subject_;
  std::int64_t id_ = -1;
};

}  // namespace storycut
