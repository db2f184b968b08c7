#include "adseg/error.hpp"

namespace adseg {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::InvalidTimestamp: return "InvalidTimestamp";
    case ErrorKind::UnknownStage: return "UnknownStage";
    case ErrorKind::EmptyUserId: return "EmptyUserId";
    case ErrorKind::UnregisteredAdvert: return "UnregisteredAdvert";
    case ErrorKind::DuplicateApp: return "DuplicateApp";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::WrongCategoryCount: return "WrongCategoryCount";
    case ErrorKind::NoCataloguedApps: return "NoCataloguedApps";
    case ErrorKind::TooFewProfiles: return "TooFewProfiles";
    case ErrorKind::TooFewDistinctPoints: return "TooFewDistinctPoints";
    case ErrorKind::DegenerateK: return "DegenerateK";
    case ErrorKind::EmptyDatabase: return "EmptyDatabase";
    case ErrorKind::NoQualifyingSet: return "NoQualifyingSet";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

ParseError::ParseError(ErrorKind kind, std::size_t line_no, std::string field,
                       const std::string& message)
    : Error(kind, "line " + std::to_string(line_no) + ", field '" + field +
                      "': " + message),
      line_no_(line_no),
      field_(std::move(field)) {}

}  // namespace adseg
