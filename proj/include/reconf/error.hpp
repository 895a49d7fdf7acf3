#pragma once

#include <stdexcept>
#include <string>

namespace reconf {

// Malformed or out-of-range input (bad vertex id, wrong rank, unparsable text).
class input_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an algorithm does not hold.
class contract_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// State-space enumeration would exceed the configured cap.
class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class move_error_kind {
  source_mismatch,
  duplicate_target,
  distance_violated,
  mover_budget_exceeded,
  invalid_vertex,
};

inline const char *to_string(move_error_kind kind) {
  switch (kind) {
  case move_error_kind::source_mismatch:
    return "source mismatch";
  case move_error_kind::duplicate_target:
    return "duplicate target";
  case move_error_kind::distance_violated:
    return "distance violated";
  case move_error_kind::mover_budget_exceeded:
    return "mover budget exceeded";
  case move_error_kind::invalid_vertex:
    return "invalid vertex";
  }
  return "unknown";
}

class move_error : public std::runtime_error {
public:
  move_error(move_error_kind kind, const std::string &detail)
      : std::runtime_error(detail), kind_(kind) {}

  move_error_kind kind() const noexcept { return kind_; }

private:
  move_error_kind kind_;
};

} // namespace reconf
