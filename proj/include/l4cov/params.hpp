#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "l4cov/arith.hpp"

namespace l4cov {

class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest q accepted by derive(); keeps q^12 - 1 well inside the arithmetic
/// used by the spectrum and field modules.
inline constexpr std::uint64_t kMaxQ = std::uint64_t{1} << 16;

/// Group-level quantities of SL_4^ε(q) / PSL_4^ε(q), q = p^m with p odd.
struct GroupParams {
    Sign epsilon = Sign::Plus;
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    BigInt q;
    BigInt q_minus_eps;   // q - ε1
    BigInt q_plus_eps;    // q + ε1
    BigInt phi3;          // q^2 + εq + 1
    BigInt phi4;          // q^2 + 1
    BigInt two_part_qme;  // (q - ε1)_2
    BigInt two_part_q2m1; // (q^2 - 1)_2
    unsigned center_order = 0;

    int eps() const { return sign_value(epsilon); }
    /// εq as a signed integer.
    BigInt eps_q() const { return eps() * q; }

    friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

GroupParams derive(Sign epsilon, std::uint32_t p, std::uint32_t m);

/// Inverse of derive() on q: splits q = p^m. Throws ParamError unless q is a
/// power of an odd prime.
GroupParams derive_from_q(Sign epsilon, const BigInt& q);

enum class TargetKind { R4, R3, TwoPartQ2M1, R2TimesTwoPart };

std::string_view to_string(TargetKind kind);

/// One entry of the list of admissible witness orders |g| with p|g| outside ω(L).
/// order is 0 when the entry is not applicable and its primitive divisor does not exist.
struct TargetOrder {
    TargetKind kind;
    BigInt order;
    bool applicable = false;
};

std::vector<TargetOrder> target_orders(const GroupParams& params);

/// r_n(εq) for n in {2, 3, 4}; throws ParamError if it does not exist.
BigInt primitive_divisor_of(const GroupParams& params, unsigned n);

} // namespace l4cov
