#pragma once

// Exact element-order spectra of SL_4^ε(q) and PSL_4^ε(q) for small odd q.
//
// Conjugacy classes are enumerated as class data: a set of Frobenius orbits of
// eigenvalues (orbits of e -> εq*e on exponents) each carrying a partition that
// records the Jordan block sizes. Every eigenvalue exponent is embedded in a
// single cyclic group of order Q = q^12 - 1, which contains all orbits of size
// at most 4 for both signs.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "l4cov/params.hpp"

namespace l4cov {

class SpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSpectrumQBound = 27;

enum class GroupKind { SL, PSL };

std::string_view to_string(GroupKind g);
std::optional<GroupKind> parse_group_kind(std::string_view text);

struct OrbitRep {
    unsigned d = 0;            // orbit size
    std::uint64_t e = 0;       // canonical (minimal) residue mod M_d
    std::uint64_t embedded = 0; // e * (Q / M_d) mod Q

    friend bool operator==(const OrbitRep&, const OrbitRep&) = default;
};

struct ClassEntry {
    OrbitRep orbit;
    std::vector<unsigned> partition; // non-increasing block sizes
};

struct ClassDatum {
    std::vector<ClassEntry> entries;
};

struct SpectrumTable {
    GroupParams params;
    GroupKind group = GroupKind::PSL;
    std::vector<BigInt> orders; // strictly ascending
};

/// M_d = |(εq)^d - 1|.
std::uint64_t orbit_modulus(const GroupParams& params, unsigned d);

/// Q = q^12 - 1.
std::uint64_t ambient_modulus(const GroupParams& params);

/// Canonical orbits of exact size d of e -> εq*e on Z/M_d, ascending by e.
std::vector<OrbitRep> enumerate_orbits(const GroupParams& params, unsigned d);

/// Calls visit once per class datum with determinant 1 (classes of SL_4^ε(q)).
void for_each_class(const GroupParams& params, const std::function<void(const ClassDatum&)>& visit,
                    std::uint64_t q_bound = kDefaultSpectrumQBound);

/// Order of an element with the given class datum, in SL or in PSL.
BigInt element_order(const GroupParams& params, const ClassDatum& datum, GroupKind group);

SpectrumTable omega(const GroupParams& params, GroupKind group,
                    std::uint64_t q_bound = kDefaultSpectrumQBound);

/// x ∈ ω, i.e. x divides some listed order.
bool member(const SpectrumTable& table, const BigInt& x);

/// Dump file: header "# epsilon=<+|-> q=<q> group=<SL|PSL>", then one order
/// per line, ascending, newline-terminated.
std::string format_dump(const SpectrumTable& table);
SpectrumTable parse_dump(const std::string& text);

} // namespace l4cov
