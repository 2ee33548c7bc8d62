#pragma once

#include "lefsplit/linalg.hpp"

#include <stdexcept>
#include <string>

namespace lefsplit {

/// Process exit codes of the command-line tool.
enum class ExitCode : int {
  ok = 0,
  verificationFailure = 1,
  inputError = 2,
  engineDefect = 3,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

/// Malformed or inconsistent input data.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what, ExitCode::inputError) {}
};

/// Parse failure anchored at a JSON pointer.
class ParseError : public InputError {
 public:
  ParseError(std::string pointer, const std::string& what)
      : InputError((pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// A computation found the input to violate a required property.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what)
      : Error(what, ExitCode::verificationFailure) {}
};

/// A Psi-step containment assertion failed: eta^(i+t) S_(t-1) is not in W_(<=i+t).
class ContainmentViolation : public VerificationError {
 public:
  ContainmentViolation(int i, int d, int t, VecQ witness)
      : VerificationError("containment violation at (i=" + std::to_string(i) +
                          ", d=" + std::to_string(d) + ", t=" + std::to_string(t) + ")"),
        i(i), d(d), t(t), witness(std::move(witness)) {}
  int i, d, t;
  VecQ witness;
};

class AssemblyFailure : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class HardLefschetzFailure : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class CompatibilityFailure : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

/// A hypothesis of a theorem-backed check does not hold; no conclusion is drawn.
class HypothesisFailure : public VerificationError {
 public:
  explicit HypothesisFailure(std::string hypothesis)
      : VerificationError("hypothesis failed: " + hypothesis), hypothesis(std::move(hypothesis)) {}
  std::string hypothesis;
};

class PreconditionFailure : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class GroupClosureBoundExceeded : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

/// A check guaranteed by a theorem failed although its hypotheses hold.
class EngineDefect : public Error {
 public:
  explicit EngineDefect(const std::string& what) : Error(what, ExitCode::engineDefect) {}
};

}  // namespace lefsplit
