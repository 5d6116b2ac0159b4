#include "l4cov/arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace l4cov {

namespace {

constexpr std::uint32_t kTrialLimit = 1u << 20;

const std::vector<std::uint32_t>& small_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool fits_u64(const BigInt& n)
{
    return n >= 0 && n <= BigInt{std::numeric_limits<std::uint64_t>::max()};
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1)
            r = detail::mulmod64(r, b, m);
        b = detail::mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

template <typename Int, typename PowMod, typename MulMod>
bool miller_rabin_round(const Int& n, const Int& d, unsigned s, const Int& base, PowMod powm,
                        MulMod mulm)
{
    Int a = base % n;
    if (a == 0)
        return true;
    Int x = powm(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulm(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

constexpr std::array<unsigned, 13> kMrBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin_big(const BigInt& n)
{
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto powm = [](const BigInt& b, const BigInt& e, const BigInt& m) { return pow_mod(b, e, m); };
    auto mulm = [](const BigInt& a, const BigInt& b, const BigInt& m) -> BigInt { return a * b % m; };
    return std::all_of(kMrBases.begin(), kMrBases.end(), [&](unsigned b) {
        return miller_rabin_round<BigInt>(n, d, s, BigInt{b}, powm, mulm);
    });
}

int jacobi(BigInt a, BigInt n)
{
    a = mod_floor(a, n);
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const unsigned r = static_cast<unsigned>(n % 8);
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

BigInt half_mod(BigInt x, const BigInt& n)
{
    if ((x & 1) != 0)
        x += n;
    return (x >> 1) % n;
}

// Strong Lucas probable-prime test with Selfridge parameters.
bool strong_lucas(const BigInt& n)
{
    if (boost::multiprecision::sqrt(n) * boost::multiprecision::sqrt(n) == n)
        return false;
    BigInt D = 5;
    for (;;) {
        const int j = jacobi(D, n);
        if (j == -1)
            break;
        if (j == 0 && abs(D) != n)
            return false;
        D = D > 0 ? BigInt{-(D + 2)} : BigInt{-(D - 2)};
    }
    const BigInt P = 1;
    const BigInt Q = (1 - D) / 4;
    BigInt d = n + 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    const BigInt Dm = mod_floor(D, n);
    const BigInt Qm = mod_floor(Q, n);
    BigInt U = 1, V = P, Qk = Qm;
    const unsigned bits = static_cast<unsigned>(msb(d));
    for (int bit = static_cast<int>(bits) - 1; bit >= 0; --bit) {
        U = U * V % n;
        V = mod_floor(V * V - 2 * Qk, n);
        Qk = Qk * Qk % n;
        if (bit_test(d, static_cast<unsigned>(bit))) {
            const BigInt U2 = half_mod(P * U + V, n);
            const BigInt V2 = half_mod(Dm * U + P * V, n);
            U = U2;
            V = V2;
            Qk = Qk * Qm % n;
        }
    }
    if (U == 0 || V == 0)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        V = mod_floor(V * V - 2 * Qk, n);
        if (V == 0)
            return true;
        Qk = Qk * Qk % n;
    }
    return false;
}

std::uint64_t rho64(std::uint64_t n)
{
    if (n % 2 == 0)
        return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (detail::mulmod64(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = detail::mulmod64(q, x > y ? x - y : y - x, n);
                }
                g = detail::gcd64(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = detail::gcd64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

BigInt rho_big(const BigInt& n)
{
    if ((n & 1) == 0)
        return 2;
    for (unsigned c = 1;; ++c) {
        auto f = [&](const BigInt& x) { return (x * x + c) % n; };
        BigInt y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split_into(const BigInt& n, std::map<BigInt, unsigned>& acc)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++acc[n];
        return;
    }
    BigInt d = fits_u64(n) ? BigInt{rho64(static_cast<std::uint64_t>(n))} : rho_big(n);
    split_into(d, acc);
    split_into(n / d, acc);
}

} // namespace

namespace detail {

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b)
{
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

bool is_prime64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulm = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) { return mulmod64(a, b, m); };
    for (std::uint64_t b : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin_round<std::uint64_t>(n, d, s, b, powmod64, mulm))
            return false;
    }
    return true;
}

} // namespace detail

std::optional<Sign> parse_sign(const std::string& text)
{
    if (text == "+" || text == "plus")
        return Sign::Plus;
    if (text == "-" || text == "minus")
        return Sign::Minus;
    return std::nullopt;
}

BigInt default_factor_bound()
{
    return BigInt{1} << 128;
}

BigInt two_part(const BigInt& a)
{
    return BigInt{1} << two_adic_valuation(a);
}

unsigned two_adic_valuation(const BigInt& a)
{
    if (a == 0)
        throw ArithError("two_part: zero has no 2-part");
    return static_cast<unsigned>(lsb(abs(a)));
}

BigInt mod_floor(const BigInt& a, const BigInt& n)
{
    if (n <= 0)
        throw ArithError("mod_floor: modulus must be positive");
    BigInt r = a % n;
    if (r < 0)
        r += n;
    return r;
}

BigInt pow_mod(BigInt base, BigInt exp, const BigInt& mod)
{
    if (exp < 0)
        throw ArithError("pow_mod: negative exponent");
    if (mod == 1)
        return 0;
    BigInt result = 1;
    base = mod_floor(base, mod);
    while (exp > 0) {
        if ((exp & 1) != 0)
            result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

BigInt ipow(const BigInt& base, unsigned exp)
{
    return boost::multiprecision::pow(base, exp);
}

BigInt gcd(const BigInt& a, const BigInt& b)
{
    return boost::multiprecision::gcd(abs(a), abs(b));
}

BigInt lcm(const BigInt& a, const BigInt& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs(a) / gcd(a, b) * abs(b);
}

bool is_prime(const BigInt& n)
{
    if (n < 2)
        return false;
    if (fits_u64(n))
        return detail::is_prime64(static_cast<std::uint64_t>(n));
    for (unsigned p : kMrBases) {
        if (n % p == 0)
            return false;
    }
    if (!miller_rabin_big(n))
        return false;
    static const BigInt proven_limit{"3317044064679887385961981"};
    if (n < proven_limit)
        return true;
    return strong_lucas(n);
}

std::vector<PrimePower> factorize(const BigInt& n)
{
    return factorize(n, default_factor_bound());
}

std::vector<PrimePower> factorize(const BigInt& n, const BigInt& bound)
{
    if (n < 2)
        throw ArithError("factorize: input must be at least 2");
    if (n > bound)
        throw SizeBoundError("factorize: input " + n.str() + " exceeds bound " + bound.str());

    std::map<BigInt, unsigned> acc;
    BigInt rest = n;
    const auto& primes = small_primes();
    std::size_t idx = 0;
    for (; idx < primes.size() && !fits_u64(rest); ++idx) {
        const std::uint32_t p = primes[idx];
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 0)
            acc[p] += e;
    }
    if (fits_u64(rest)) {
        auto r = static_cast<std::uint64_t>(rest);
        for (; idx < primes.size(); ++idx) {
            const std::uint64_t p = primes[idx];
            if (p * p > r)
                break;
            unsigned e = 0;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            if (e > 0)
                acc[p] += e;
        }
        rest = r;
    }
    if (rest > 1) {
        // Every prime factor of rest exceeds the last trial divisor.
        if (rest < BigInt{kTrialLimit} * kTrialLimit || idx < primes.size())
            ++acc[rest];
        else
            split_into(rest, acc);
    }

    std::vector<PrimePower> out;
    out.reserve(acc.size());
    for (auto& [prime, e] : acc)
        out.push_back({prime, e});
    return out;
}

std::optional<BigInt> primitive_prime_divisor(const BigInt& a, unsigned n, Sign eps)
{
    if (a < 2 || n < 2)
        throw ArithError("primitive_prime_divisor: need a >= 2 and n >= 2");
    const int e = sign_value(eps);
    auto unit_power = [e](unsigned i) { return (e < 0 && i % 2 == 1) ? -1 : 1; };

    const BigInt value = ipow(a, n) - unit_power(n);
    for (const auto& f : factorize(value)) {
        const BigInt& r = f.prime;
        bool primitive = true;
        for (unsigned i = 1; i < n && primitive; ++i)
            primitive = mod_floor(pow_mod(a, i, r) - unit_power(i), r) != 0;
        if (primitive)
            return r;
    }
    return std::nullopt;
}

BigInt order_in_cyclic(const BigInt& N, const BigInt& e)
{
    if (N < 1)
        throw ArithError("order_in_cyclic: N must be positive");
    return N / gcd(N, mod_floor(e, N));
}

BigInt inverse_mod_2pow(const BigInt& x, unsigned s)
{
    if ((x & 1) == 0)
        throw ArithError("inverse_mod_2pow: argument must be odd");
    if (s == 0)
        throw ArithError("inverse_mod_2pow: s must be positive");
    const BigInt mod = BigInt{1} << s;
    const BigInt xm = mod_floor(x, mod);
    // Newton step doubles the number of correct low bits; x is its own inverse mod 8.
    BigInt y = xm;
    for (unsigned bits = 3; bits < s; bits *= 2)
        y = mod_floor(y * (2 - xm * y), mod);
    return mod_floor(y, mod);
}

std::string to_decimal(const BigInt& v)
{
    return v.str();
}

BigInt parse_decimal(const std::string& text)
{
    const std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
    if (text.size() == start)
        throw ArithError("parse_decimal: empty number");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ArithError("parse_decimal: invalid digit in '" + text + "'");
    }
    return BigInt{text};
}

} // namespace l4cov
