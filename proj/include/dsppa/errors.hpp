// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dsppa {

/// Error classes. Each maps to one CLI exit code (see exit_code()).
enum class ErrorKind {
  Argument,
  Dimension,
  Numeric,
  Diverged,
  Precondition,
  Format,
  Parse,
  Data,
  Io,
  Tuning,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& w) : Error(ErrorKind::Argument, w) {}
};
struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error(ErrorKind::Dimension, w) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct DivergedError : Error {
  explicit DivergedError(const std::string& w) : Error(ErrorKind::Diverged, w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(ErrorKind::Precondition, w) {}
};
struct FormatError : Error {
  explicit FormatError(const std::string& w) : Error(ErrorKind::Format, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct DataError : Error {
  explicit DataError(const std::string& w) : Error(ErrorKind::Data, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};
struct TuningError : Error {
  explicit TuningError(const std::string& w) : Error(ErrorKind::Tuning, w) {}
};

/// Process exit code for an error class. 0 is reserved for success and 1 for
/// unexpected failures.
int exit_code(ErrorKind kind) noexcept;

}  // namespace dsppa
