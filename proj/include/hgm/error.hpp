#pragma once

#include <stdexcept>
#include <string>

namespace hgm {

enum class ErrorKind {
  Parse,
  ZeroEntry,
  EmptySide,
  SumNonzero,
  GcdNotOne,
  NotDisjoint,
  Unbalanced,
  Degenerate,
  InvalidArgument,
  BadPrime,
  NonSplit,
  Precision,
  Consistency,
  Budget,
  MissingFactor,
  FixtureMismatch,
  SignatureRequired,
  OffRamp,
  Io,
};

const char *error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace hgm
