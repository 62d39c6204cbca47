#pragma once

#include <stdexcept>
#include <string>

namespace shotgun {

enum class ErrorCode {
  OddParity,
  InvalidDegree,
  RejectionBudgetExceeded,
  BudgetExceeded,
  DomainError,
  IoError,
  MalformedDeck,
  InvalidWitness,
  NoOmegaVertex,
  NotFound,
  InvalidArgument,
  PlantFailed,
};

// Contract violations and exhausted budgets throw; expected negative
// outcomes (ambiguous deck, no witness found, ...) are result values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OddParity: return "odd_parity";
    case ErrorCode::InvalidDegree: return "invalid_degree";
    case ErrorCode::RejectionBudgetExceeded: return "rejection_budget_exceeded";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::DomainError: return "domain_error";
    case ErrorCode::IoError: return "io_error";
    case ErrorCode::MalformedDeck: return "malformed_deck";
    case ErrorCode::InvalidWitness: return "invalid_witness";
    case ErrorCode::NoOmegaVertex: return "no_omega_vertex";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::PlantFailed: return "plant_failed";
  }
  return "unknown";
}

}  // namespace shotgun
