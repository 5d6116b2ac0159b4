#pragma once

// Independent re-check of a WitnessCertificate using exponent arithmetic only.
//
//   V1 determinant      e1+e2+e3+e4 ≡ 0 (mod N)
//   V2 rationality      {e_j} is stable under e -> εq*e
//   V3 semisimplicity   gcd(N, p) = 1
//   V4 order            lcm_j ord(θ^{e_j}) = claimed_order
//   V5 center           no g^{|g|/ℓ} is scalar, ℓ prime
//   V6 selections       one selection of size k_i per factor, distinct values
//   V7 fixed point      sum_i p^i * sum_{j in S_i} e_j ≡ 0 (mod N)
//   V8 admissibility    claimed_order is an applicable target order; target = p*claimed

#include <string>
#include <vector>

#include "l4cov/spectrum.hpp"
#include "l4cov/witness.hpp"

namespace l4cov {

/// Structural defect detected before any check runs.
class MalformedCertificate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CheckResult {
    std::string id;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall = false;

    const CheckResult* find(const std::string& id) const;
    bool passed(const std::string& id) const;
};

struct VerifyOptions {
    /// When false, coinciding characteristic values in one selection only warn.
    bool strict_distinct_values = true;
    /// Optional exact ω(PSL_4^ε(q)) used to confirm V8.
    const SpectrumTable* spectrum = nullptr;
};

/// Throws MalformedCertificate on wrong sizes, unreduced exponents or
/// inconsistent parameters.
void check_well_formed(const WitnessCertificate& cert);

VerificationReport verify(const WitnessCertificate& cert, const VerifyOptions& options = {});

/// Least k >= 1 such that g^k is scalar, i.e. all e_j * k agree mod N.
BigInt scalar_order(const BigInt& N, const std::array<BigInt, 4>& exponents);

/// Every assignment of position sets (sizes k_i) with distinct characteristic
/// values and a vanishing weight, lexicographically ordered. Requires m <= 6.
std::vector<std::vector<Selection>> brute_force_selections(const WitnessCertificate& cert);

} // namespace l4cov
