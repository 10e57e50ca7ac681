#pragma once

#include <stdexcept>
#include <string>

namespace preper {

// Every failure the library signals deliberately carries one of these codes.
// Tests match on the code, not on message text.
enum class errc {
  zero_polynomial,
  excluded_parameter,
  same_orbit_pair,
  internal_inconsistency,
  unknown_curve,
  not_on_curve,
  identity_fails,
  bad_prime,
  not_prime,
  bad_degree,
  zero_form,
  budget_exceeded,
  bad_reduction,
  non_integral_coefficient,
  not_divisible,
  empty_set,
  unknown_label,
  network_unavailable,
  malformed_response,
  usage,
};

constexpr const char* errc_name(errc code) {
  switch (code) {
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::excluded_parameter: return "ExcludedParameter";
    case errc::same_orbit_pair: return "SameOrbitPair";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::unknown_curve: return "UnknownCurve";
    case errc::not_on_curve: return "NotOnCurve";
    case errc::identity_fails: return "IdentityFails";
    case errc::bad_prime: return "BadPrime";
    case errc::not_prime: return "NotPrime";
    case errc::bad_degree: return "BadDegree";
    case errc::zero_form: return "ZeroForm";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::bad_reduction: return "BadReduction";
    case errc::non_integral_coefficient: return "NonIntegralCoefficient";
    case errc::not_divisible: return "NotDivisible";
    case errc::empty_set: return "EmptySet";
    case errc::unknown_label: return "UnknownLabel";
    case errc::network_unavailable: return "NetworkUnavailable";
    case errc::malformed_response: return "MalformedResponse";
    case errc::usage: return "Usage";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace preper
