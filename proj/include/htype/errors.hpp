// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace htype {

// Input outside an operation's domain. Maps to CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite sample, divergent tail, failed normalization.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File or directory access failed; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& rule) {
  if (!ok) throw PreconditionError(rule);
}

}  // namespace htype
