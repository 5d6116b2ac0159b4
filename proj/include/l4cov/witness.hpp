#pragma once

// Construction of semisimple witnesses g in SL_4^ε(q) with p|g| outside ω(L)
// and a vanishing weight on g for every admissible profile (k_0, ..., k_{m-1}).
//
// g is recorded abstractly: θ generates a cyclic group of order N and the
// characteristic values of g are θ^{e_1}, ..., θ^{e_4}. A selection for tensor
// factor i names k_i of those four positions; the weight built from it vanishes
// on g when sum_i p^i * sum_{j in positions_i} e_j ≡ 0 (mod N).

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "l4cov/params.hpp"

namespace l4cov {

/// Invalid input to the constructor (bad profile, precondition violated).
class WitnessError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The constructor failed an internal postcondition. Indicates a defect.
class ConstructionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Profile {
    std::vector<int> ks;

    friend bool operator==(const Profile&, const Profile&) = default;
};

/// Every profile in {0,1,2,3}^m, lexicographic in (k_0, ..., k_{m-1}).
std::vector<Profile> all_profiles(unsigned m);

enum class CaseTag { A_R4, B_R3, C_QcongMinusEps, D_QcongEps };

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> parse_case_tag(std::string_view text);

struct Selection {
    unsigned factor = 0;
    std::vector<int> positions; // 1-based, ascending

    friend bool operator==(const Selection&, const Selection&) = default;
    friend auto operator<=>(const Selection&, const Selection&) = default;
};

struct Adjustment {
    enum class Kind { FlipK13, SwapK2 };
    Kind kind;
    unsigned factor = 0;
    std::vector<int> from;
    std::vector<int> to;

    friend bool operator==(const Adjustment&, const Adjustment&) = default;
};

std::string_view to_string(Adjustment::Kind kind);

struct CaseDInternals {
    BigInt r; // r_2(εq)
    BigInt t; // r * (q - ε1)_2
    BigInt a;
    BigInt b;
    BigInt A;
    BigInt B;
    std::vector<Adjustment> adjustments;

    friend bool operator==(const CaseDInternals&, const CaseDInternals&) = default;
};

struct WitnessCertificate {
    GroupParams params;
    Profile profile;
    CaseTag case_tag = CaseTag::A_R4;
    BigInt theta_order;
    std::array<BigInt, 4> exponents;
    std::vector<Selection> selections;
    BigInt claimed_order;
    BigInt target_order;
    std::optional<CaseDInternals> case_d;

    friend bool operator==(const WitnessCertificate&, const WitnessCertificate&) = default;
};

CaseTag classify_profile(const Profile& profile, const GroupParams& params);

WitnessCertificate construct(const GroupParams& params, const Profile& profile);

struct ABPair {
    BigInt A;
    BigInt B;
};

/// Reads off A and B such that the fixed-point exponent of the case-D
/// selections equals a*A + r*b*B identically in a and b.
ABPair compute_AB(const Profile& profile, const GroupParams& params,
                  const std::vector<Selection>& selections);

struct BalancedSelections {
    std::vector<Selection> selections;
    BigInt A;
    BigInt B;
    std::vector<Adjustment> adjustments;
};

/// Makes (A)_2 != (B)_2 with at most one flip of a k in {1,3} factor followed by
/// at most one swap of a k = 2 factor (smallest eligible index each time).
BalancedSelections balance_two_parts(const BigInt& A, const BigInt& B, const Profile& profile,
                                     const GroupParams& params, std::vector<Selection> selections);

struct ABSolution {
    BigInt a;
    BigInt b;
};

/// Solves a*A + r*b*B ≡ 0 (mod (q-ε1)_2) with a, b of opposite parity and
/// gcd(a, r) = 1. Requires (A)_2 != (B)_2.
ABSolution solve_ab(const BigInt& A, const BigInt& B, const GroupParams& params);

} // namespace l4cov
