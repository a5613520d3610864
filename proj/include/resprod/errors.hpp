#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace resprod {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problem shape: dimension mismatch, non-finite values, bad labels.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A mathematical guarantee failed to hold; indicates a bug or numerical breakdown.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A DMU whose output-oriented program is unbounded (e.g. all-zero outputs).
class DegenerateDmuError : public Error {
 public:
  DegenerateDmuError(std::string dmu, const std::string& what)
      : Error(what), dmu_(std::move(dmu)) {}
  const std::string& dmu() const noexcept { return dmu_; }

 private:
  std::string dmu_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class CorruptRecordError : public Error {
 public:
  using Error::Error;
};

/// Lagged snapshot years absent from the staff registry or funding table.
class MissingDataError : public Error {
 public:
  MissingDataError(std::vector<int> years, const std::string& what)
      : Error(what), years_(std::move(years)) {}
  const std::vector<int>& years() const noexcept { return years_; }

 private:
  std::vector<int> years_;
};

class AreaNotAnalyzableError : public Error {
 public:
  using Error::Error;
};

/// One row-level problem found while reading an input file.
struct LineDiagnostic {
  std::string file;
  std::size_t line = 0;
  std::string message;
};

/// Fatal input problem; carries every row-level diagnostic collected.
class InputError : public Error {
 public:
  explicit InputError(std::vector<LineDiagnostic> diagnostics);
  const std::vector<LineDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<LineDiagnostic> diagnostics_;
};

}  // namespace resprod
