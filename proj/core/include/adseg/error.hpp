#ifndef ADSEG_ERROR_HPP
#define ADSEG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adseg {

enum class ErrorKind {
  // ingest
  MalformedLine,
  InvalidTimestamp,
  UnknownStage,
  EmptyUserId,
  UnregisteredAdvert,
  // catalog / features
  DuplicateApp,
  UnknownCategory,
  WrongCategoryCount,
  NoCataloguedApps,
  TooFewProfiles,
  // clustering
  TooFewDistinctPoints,
  DegenerateK,
  // mining
  EmptyDatabase,
  NoQualifyingSet,
  // synth / config / io
  InvalidSpec,
  BadConfig,
  IoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Failure tied to one input line; carries line number and offending field so
// strict mode can report them and lenient mode can count and skip.
class ParseError : public Error {
public:
  ParseError(ErrorKind kind, std::size_t line_no, std::string field,
             const std::string& message);

  std::size_t line_no() const noexcept { return line_no_; }
  const std::string& field() const noexcept { return field_; }

private:
  std::size_t line_no_;
  std::string field_;
};

}  // namespace adseg

#endif  // ADSEG_ERROR_HPP
