#pragma once

// Finite fields GF(p^k) = GF(p)[x]/(f) and 4x4 matrices over them, used to
// realize certificates as explicit diagonal matrices and to sample SL_4(q).

#include <array>
#include <cstdint>
#include <vector>

#include "l4cov/witness.hpp"

namespace l4cov {

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A realized matrix order disagrees with the certificate's claim.
class RealizationMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr unsigned kMaxFieldDegree = 32;

/// Coefficients c[0..k-1] of a polynomial of degree < k; unused slots are zero.
struct FieldElem {
    std::array<std::uint32_t, kMaxFieldDegree> c{};

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class FieldDesc {
public:
    /// modulus: monic, low-to-high coefficients, size k + 1. Irreducibility is
    /// checked unless trusted is set.
    FieldDesc(std::uint32_t p, std::vector<std::uint32_t> modulus, bool trusted = false);

    std::uint32_t p() const { return p_; }
    unsigned k() const { return k_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    /// p^k.
    const BigInt& size() const { return size_; }

    FieldElem zero() const { return {}; }
    FieldElem one() const;
    FieldElem from_int(std::uint64_t v) const;
    /// Element whose coefficients are the base-p digits of index.
    FieldElem from_index(BigInt index) const;
    bool is_zero(const FieldElem& a) const { return a == FieldElem{}; }

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem pow(FieldElem base, BigInt exp) const;
    /// Throws FieldError on zero.
    FieldElem inv(const FieldElem& a) const;

private:
    std::uint32_t p_;
    unsigned k_;
    std::vector<std::uint32_t> modulus_;
    BigInt size_;
};

/// Ben-Or test: monic f of degree k is irreducible over GF(p) iff
/// gcd(x^{p^i} - x, f) = 1 for 1 <= i <= k/2.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);

/// The first irreducible monic polynomial of degree k, scanning lower
/// coefficients as base-p digits of 0, 1, 2, ...
FieldDesc build_field(std::uint32_t p, unsigned k);

/// An element of exact multiplicative order N; N must divide p^k - 1.
FieldElem element_of_order(const FieldDesc& field, const BigInt& N);

struct Matrix4 {
    std::array<FieldElem, 16> a{};

    FieldElem& at(int r, int c) { return a[static_cast<std::size_t>(4 * r + c)]; }
    const FieldElem& at(int r, int c) const { return a[static_cast<std::size_t>(4 * r + c)]; }

    friend bool operator==(const Matrix4&, const Matrix4&) = default;
};

Matrix4 identity_matrix(const FieldDesc& f);
Matrix4 mat_mul(const FieldDesc& f, const Matrix4& x, const Matrix4& y);
Matrix4 mat_pow(const FieldDesc& f, Matrix4 base, BigInt exp);
FieldElem determinant(const FieldDesc& f, Matrix4 m);
bool is_identity(const FieldDesc& f, const Matrix4& m);
bool is_scalar(const FieldDesc& f, const Matrix4& m);

/// Multiplicative order of m given a multiple of it.
BigInt matrix_order(const FieldDesc& f, const Matrix4& m, const BigInt& multiple);

/// Least k >= 1 with m^k scalar, given a multiple of the order of m.
BigInt projective_order(const FieldDesc& f, const Matrix4& m, const BigInt& multiple);

struct Realization {
    FieldDesc field;
    FieldElem theta;
    Matrix4 matrix;
    BigInt computed_order;
};

/// Builds diag(θ^{e_1}, ..., θ^{e_4}) over GF(p^{12m}) and computes its order
/// by matrix powering. Throws RealizationMismatch if the order differs from
/// the claimed order, SizeBoundError if 12m exceeds kMaxFieldDegree.
Realization realize(const WitnessCertificate& cert);

struct SampledOrders {
    std::vector<BigInt> sl;  // orders of sampled elements of SL_4(q)
    std::vector<BigInt> psl; // orders of their images modulo scalars
};

/// Pseudo-random elements of SL_4(q), q in {3, 5}: rejection-sampled invertible
/// matrices with the first row rescaled by the inverse determinant.
SampledOrders sample_orders(std::uint32_t q, std::size_t count, std::uint64_t seed);

} // namespace l4cov
