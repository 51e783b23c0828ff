#pragma once

#include <stdexcept>
#include <string>

namespace nilcomb {

/// Malformed input: unreadable files, bad rational strings, bad JSON shapes.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally well-formed input that violates a contract (non-antisymmetric
/// bracket table, non-homogeneous span input, gram not positive definite, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size cap would be exceeded. Never silently truncates.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A search that is guaranteed to succeed came up empty, or a numeric
/// routine failed to converge. Indicates a bug or broken assumption.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nilcomb
