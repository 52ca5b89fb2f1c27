#pragma once

// Brute-force verifiers. Ground truth comes from q_eval / b_eval and plain enumeration;
// the closed forms under test are only ever compared against it.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ucg/field.hpp"

namespace ucg {

struct VerificationReport {
  std::string claim_id;
  unsigned field_n = 0;
  std::uint64_t cases_checked = 0;
  std::vector<std::string> failures;
  /// Counters for outcomes that are recorded rather than asserted.
  std::map<std::string, std::uint64_t> observations;

  bool ok() const { return failures.empty(); }
};

inline constexpr std::uint64_t kDefaultSeed = 20160817;

/// Index-4 intersections of lambda H(K) with H(K), and H(K) = roots of sum x^(2^i). n <= 8.
VerificationReport verify_lindex(const FieldSpec& spec);

/// Normalized Arf class is constant under basis change, and agrees with the zero count
/// of the form. Exhaustive for dim 2, seeded samples above. Requires n * dim <= 8.
VerificationReport verify_arf_wellposed(const FieldSpec& spec, int dim, std::uint64_t seed = kDefaultSeed);

/// Every non-zero orbit of Ort(e) on K^2 has |K| + 1 vectors. n <= 4.
VerificationReport verify_ort_orbits(const FieldSpec& spec);

/// lambda_M for every element of Ort(0) and Ort(e), found by search over K. n <= 4.
VerificationReport verify_lambda_constraint(const FieldSpec& spec);

/// Omega-replacement predictions against recomputation, plus which class descriptors
/// survive the replacement. n <= 3.
VerificationReport verify_transformation(const FieldSpec& spec);

/// Suites: lindex, arf, ort-orbits, lambda, transformation, all. Degrees outside a
/// suite's range are skipped for `all` and rejected (TooLarge) otherwise.
std::vector<VerificationReport> run_suite(const std::string& suite, unsigned n_min, unsigned n_max,
                                          std::uint64_t seed = kDefaultSeed);

}  // namespace ucg
