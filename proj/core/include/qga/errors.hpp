#pragma once

#include <stdexcept>
#include <string>

namespace qga {

/// Malformed group spec or table file.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A group (or a derived structure) exceeds the configured order cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An operation was called outside its domain (non-normal subgroup, wrong
/// sign mix, non-nilpotent group, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exact identity that must hold by construction did not hold.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qga
