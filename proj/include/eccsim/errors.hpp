#pragma once

#include <stdexcept>
#include <string>

namespace eccsim {

// Bad generator or run parameters (n < 2, probability out of range, ...).
struct InvalidParameterError : std::runtime_error {
  explicit InvalidParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed edge-list input; the message names the offending line.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A graph that violates a structural invariant (disconnected, too small, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A simulation that failed to terminate within its round budget.
struct RunawayError : std::runtime_error {
  explicit RunawayError(const std::string& msg) : std::runtime_error(msg) {}
};

// Misuse of the protocol state machine, e.g. transitioning a terminated node.
struct ContractViolationError : std::logic_error {
  explicit ContractViolationError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace eccsim
