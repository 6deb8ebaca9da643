#pragma once

#include <stdexcept>
#include <string>

namespace ccf {

// Input violates a documented precondition (bad denominator, wrong ring, ...).
struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Result cannot be certified at the working precision, even after retry.
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A connection/1-form fails the closedness or flatness hypothesis.
struct integrability_error : std::runtime_error {
  explicit integrability_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (CLI file formats).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ccf
