#pragma once

// Exact integer primitives: 2-parts, factorization, primitive prime divisors,
// cyclic-group orders and inverses modulo powers of two.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace l4cov {

using BigInt = boost::multiprecision::cpp_int;

/// The sign ε distinguishing linear (+) from unitary (−) groups.
enum class Sign { Plus, Minus };

constexpr int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
constexpr char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }
std::optional<Sign> parse_sign(const std::string& text);

class ArithError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an input exceeds a configured size bound.
class SizeBoundError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Default upper bound accepted by factorize(): 2^128.
BigInt default_factor_bound();

/// (a)_2, the largest power of two dividing a. Sign of a is ignored.
BigInt two_part(const BigInt& a);

/// Exponent of (a)_2. a must be nonzero.
unsigned two_adic_valuation(const BigInt& a);

/// Least nonnegative residue of a modulo n (n > 0).
BigInt mod_floor(const BigInt& a, const BigInt& n);

BigInt pow_mod(BigInt base, BigInt exp, const BigInt& mod);
BigInt ipow(const BigInt& base, unsigned exp);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Deterministic primality test. Miller-Rabin with the first thirteen prime
/// bases is exact below 3.317e24; beyond that a strong Lucas test is added
/// (Baillie-PSW).
bool is_prime(const BigInt& n);

/// Prime factorization with strictly increasing primes.
/// Throws SizeBoundError when n > bound, ArithError when n < 2.
std::vector<PrimePower> factorize(const BigInt& n);
std::vector<PrimePower> factorize(const BigInt& n, const BigInt& bound);

/// Smallest prime r dividing a^n - (ε1)^n and no a^i - (ε1)^i for 1 <= i < n,
/// or nullopt in the three Bang-Zsigmondy exception shapes.
std::optional<BigInt> primitive_prime_divisor(const BigInt& a, unsigned n, Sign eps);

/// Order of θ^e for θ of order N, i.e. N / gcd(N, e mod N).
BigInt order_in_cyclic(const BigInt& N, const BigInt& e);

/// y in [1, 2^s) with x*y ≡ 1 (mod 2^s). x must be odd.
BigInt inverse_mod_2pow(const BigInt& x, unsigned s);

/// Decimal rendering and parsing used by the document formats.
std::string to_decimal(const BigInt& v);
BigInt parse_decimal(const std::string& text);

namespace detail {

// Native-width helpers shared with the spectrum enumeration.
inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b);
bool is_prime64(std::uint64_t n);

} // namespace detail

} // namespace l4cov
