#pragma once

#include <stdexcept>
#include <string>

namespace migmap {

/// Process exit codes shared by every command.
enum class ExitCode : int {
  Ok = 0,
  Usage = 1,
  Data = 2,
  Internal = 3,
};

/// Base for all errors raised by the library; carries the exit code the CLI
/// should report.
class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Bad flags, missing or inconsistent configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::Usage, what) {}
};

/// Input data that violates a documented format or contract.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::Data, what) {}
};

/// A repository that cannot be read as a git repository.
class RepositoryError : public DataError {
 public:
  using DataError::DataError;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ExitCode::Internal, what) {}
};

}  // namespace migmap
