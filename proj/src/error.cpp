#include "poissonkit/error.hpp"

namespace poissonkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::NotSkew: return "not_skew";
    case ErrorCode::NotSymmetric: return "not_symmetric";
    case ErrorCode::NotInvariant: return "not_invariant";
    case ErrorCode::NotClosed: return "not_closed";
    case ErrorCode::InvalidStructure: return "invalid_structure";
    case ErrorCode::InconsistentLift: return "inconsistent_lift";
    case ErrorCode::NotAdmissible: return "not_admissible";
    case ErrorCode::CapExceeded: return "cap_exceeded";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::Schema: return "schema_violation";
    case ErrorCode::DomainRejection: return "domain_rejection";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::Config: return "config_error";
    case ErrorCode::Usage: return "usage_error";
  }
  return "unknown";
}

}  // namespace poissonkit
