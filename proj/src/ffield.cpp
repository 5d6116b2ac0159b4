#include "l4cov/ffield.hpp"

#include <map>
#include <mutex>
#include <random>

namespace l4cov {

namespace {

using Poly = std::vector<std::uint32_t>; // low-to-high over GF(p)

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p)
{
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

// a mod b, b nonzero and trimmed.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    trim(a);
    const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::uint64_t sub = factor * b[j] % p;
            a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly elem_to_poly(const FieldElem& e, unsigned k)
{
    Poly out(e.c.begin(), e.c.begin() + k);
    trim(out);
    return out;
}

} // namespace

FieldDesc::FieldDesc(std::uint32_t p, std::vector<std::uint32_t> modulus, bool trusted)
    : p_(p), k_(0), modulus_(std::move(modulus))
{
    if (p < 2 || p >= (1u << 16) || !is_prime(p))
        throw FieldError("field characteristic must be a prime below 2^16");
    if (modulus_.size() < 2 || modulus_.back() != 1)
        throw FieldError("modulus must be monic of degree at least 1");
    k_ = static_cast<unsigned>(modulus_.size() - 1);
    if (k_ > kMaxFieldDegree)
        throw SizeBoundError("field degree exceeds " + std::to_string(kMaxFieldDegree));
    for (auto c : modulus_) {
        if (c >= p)
            throw FieldError("modulus coefficients must be reduced mod p");
    }
    if (!trusted && !is_irreducible(p, modulus_))
        throw FieldError("modulus is reducible");
    size_ = ipow(BigInt{p}, k_);
}

FieldElem FieldDesc::one() const
{
    return from_int(1);
}

FieldElem FieldDesc::from_int(std::uint64_t v) const
{
    FieldElem e;
    e.c[0] = static_cast<std::uint32_t>(v % p_);
    return e;
}

FieldElem FieldDesc::from_index(BigInt index) const
{
    FieldElem e;
    for (unsigned i = 0; i < k_ && index > 0; ++i) {
        e.c[i] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    return e;
}

FieldElem FieldDesc::add(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r;
    for (unsigned i = 0; i < k_; ++i) {
        const std::uint32_t s = a.c[i] + b.c[i];
        r.c[i] = s >= p_ ? s - p_ : s;
    }
    return r;
}

FieldElem FieldDesc::sub(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r;
    for (unsigned i = 0; i < k_; ++i)
        r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
    return r;
}

FieldElem FieldDesc::mul(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r;
    if (k_ == 1) {
        r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p_);
        return r;
    }
    std::array<std::uint64_t, 2 * kMaxFieldDegree> prod{};
    for (unsigned i = 0; i < k_; ++i) {
        if (a.c[i] == 0)
            continue;
        for (unsigned j = 0; j < k_; ++j)
            prod[i + j] += std::uint64_t{a.c[i]} * b.c[j];
    }
    for (unsigned i = 0; i + 1 < 2 * k_; ++i)
        prod[i] %= p_;
    // x^k = -(f_0 + ... + f_{k-1} x^{k-1})
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
        const std::uint64_t t = prod[i];
        if (t == 0)
            continue;
        for (unsigned j = 0; j < k_; ++j)
            prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - t) * modulus_[j]) % p_;
    }
    for (unsigned i = 0; i < k_; ++i)
        r.c[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
}

FieldElem FieldDesc::pow(FieldElem base, BigInt exp) const
{
    if (exp < 0)
        throw FieldError("negative exponent");
    FieldElem result = one();
    while (exp > 0) {
        if ((exp & 1) != 0)
            result = mul(result, base);
        exp >>= 1;
        if (exp > 0)
            base = mul(base, base);
    }
    return result;
}

FieldElem FieldDesc::inv(const FieldElem& a) const
{
    if (is_zero(a))
        throw FieldError("inverse of zero");
    if (k_ == 1) {
        FieldElem r;
        r.c[0] = inv_mod_p(a.c[0], p_);
        return r;
    }
    return pow(a, size_ - 2);
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic)
{
    const FieldDesc ring(p, monic, /*trusted=*/true);
    const unsigned k = ring.k();
    if (k == 1)
        return true;
    if (monic[0] == 0)
        return false;
    FieldElem x;
    x.c[1] = 1;
    FieldElem h = x;
    for (unsigned i = 1; i <= k / 2; ++i) {
        h = ring.pow(h, p);
        const Poly g = poly_gcd(elem_to_poly(ring.sub(h, x), k), monic, p);
        if (g.size() > 1)
            return false;
    }
    return true;
}

FieldDesc build_field(std::uint32_t p, unsigned k)
{
    if (k < 1 || k > kMaxFieldDegree)
        throw SizeBoundError("field degree must lie in 1.." + std::to_string(kMaxFieldDegree));
    if (p < 3 || !is_prime(p))
        throw FieldError("field characteristic must be an odd prime");
    for (BigInt index = 0;; ++index) {
        std::vector<std::uint32_t> f(k + 1, 0);
        f[k] = 1;
        BigInt digits = index;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = static_cast<std::uint32_t>(digits % p);
            digits /= p;
        }
        if (digits > 0)
            throw FieldError("no irreducible polynomial found");
        if (is_irreducible(p, f))
            return FieldDesc(p, std::move(f), /*trusted=*/true);
    }
}

FieldElem element_of_order(const FieldDesc& field, const BigInt& N)
{
    const BigInt group_order = field.size() - 1;
    if (N < 1 || group_order % N != 0)
        throw FieldError("element_of_order: " + N.str() + " does not divide " + group_order.str());
    if (N == 1)
        return field.one();
    const BigInt cofactor = group_order / N;
    const auto primes = factorize(N);
    const FieldElem one = field.one();
    for (BigInt counter = 2; counter < field.size(); ++counter) {
        const FieldElem y = field.pow(field.from_index(counter), cofactor);
        bool exact = field.pow(y, N) == one;
        for (const auto& f : primes) {
            if (!exact)
                break;
            exact = field.pow(y, N / f.prime) != one;
        }
        if (exact)
            return y;
    }
    throw FieldError("element_of_order: no element of order " + N.str() + " found");
}

Matrix4 identity_matrix(const FieldDesc& f)
{
    Matrix4 m;
    for (int i = 0; i < 4; ++i)
        m.at(i, i) = f.one();
    return m;
}

Matrix4 mat_mul(const FieldDesc& f, const Matrix4& x, const Matrix4& y)
{
    Matrix4 r;
    if (f.k() == 1) {
        const std::uint64_t p = f.p();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                std::uint64_t s = 0;
                for (int l = 0; l < 4; ++l)
                    s += std::uint64_t{x.at(i, l).c[0]} * y.at(l, j).c[0];
                r.at(i, j).c[0] = static_cast<std::uint32_t>(s % p);
            }
        return r;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            FieldElem s;
            for (int l = 0; l < 4; ++l) {
                if (f.is_zero(x.at(i, l)) || f.is_zero(y.at(l, j)))
                    continue;
                s = f.add(s, f.mul(x.at(i, l), y.at(l, j)));
            }
            r.at(i, j) = s;
        }
    return r;
}

Matrix4 mat_pow(const FieldDesc& f, Matrix4 base, BigInt exp)
{
    if (exp < 0)
        throw FieldError("negative matrix exponent");
    Matrix4 result = identity_matrix(f);
    while (exp > 0) {
        if ((exp & 1) != 0)
            result = mat_mul(f, result, base);
        exp >>= 1;
        if (exp > 0)
            base = mat_mul(f, base, base);
    }
    return result;
}

FieldElem determinant(const FieldDesc& f, Matrix4 m)
{
    FieldElem det = f.one();
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        while (pivot < 4 && f.is_zero(m.at(pivot, col)))
            ++pivot;
        if (pivot == 4)
            return f.zero();
        if (pivot != col) {
            for (int j = 0; j < 4; ++j)
                std::swap(m.at(pivot, j), m.at(col, j));
            det = f.sub(f.zero(), det);
        }
        det = f.mul(det, m.at(col, col));
        const FieldElem inv = f.inv(m.at(col, col));
        for (int r = col + 1; r < 4; ++r) {
            const FieldElem factor = f.mul(m.at(r, col), inv);
            if (f.is_zero(factor))
                continue;
            for (int j = col; j < 4; ++j)
                m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(col, j)));
        }
    }
    return det;
}

bool is_identity(const FieldDesc& f, const Matrix4& m)
{
    return m == identity_matrix(f);
}

bool is_scalar(const FieldDesc& f, const Matrix4& m)
{
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i != j && !f.is_zero(m.at(i, j)))
                return false;
        }
    return m.at(0, 0) == m.at(1, 1) && m.at(0, 0) == m.at(2, 2) && m.at(0, 0) == m.at(3, 3);
}

namespace {

template <typename Pred>
BigInt order_under(const FieldDesc& f, const Matrix4& m, const BigInt& multiple, Pred done)
{
    if (multiple < 1 || !done(mat_pow(f, m, multiple)))
        throw FieldError("matrix order does not divide " + multiple.str());
    BigInt order = 1;
    if (multiple == 1)
        return order;
    for (const auto& fac : factorize(multiple)) {
        const BigInt full = ipow(fac.prime, fac.exponent);
        Matrix4 h = mat_pow(f, m, multiple / full);
        while (!done(h)) {
            h = mat_pow(f, h, fac.prime);
            order *= fac.prime;
        }
    }
    return order;
}

const FieldDesc& cached_field(std::uint32_t p, unsigned k)
{
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, FieldDesc> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({p, k});
    if (it == cache.end())
        it = cache.emplace(std::make_pair(p, k), build_field(p, k)).first;
    return it->second;
}

} // namespace

BigInt matrix_order(const FieldDesc& f, const Matrix4& m, const BigInt& multiple)
{
    return order_under(f, m, multiple, [&](const Matrix4& x) { return is_identity(f, x); });
}

BigInt projective_order(const FieldDesc& f, const Matrix4& m, const BigInt& multiple)
{
    return order_under(f, m, multiple, [&](const Matrix4& x) { return is_scalar(f, x); });
}

Realization realize(const WitnessCertificate& cert)
{
    const unsigned k = 12 * cert.params.m;
    if (k > kMaxFieldDegree)
        throw SizeBoundError("realize: degree 12m = " + std::to_string(k) + " exceeds " +
                             std::to_string(kMaxFieldDegree));
    const FieldDesc& field = cached_field(cert.params.p, k);
    const FieldElem theta = element_of_order(field, cert.theta_order);

    Matrix4 g;
    for (int j = 0; j < 4; ++j)
        g.at(j, j) = field.pow(theta, cert.exponents[static_cast<std::size_t>(j)]);
    BigInt order = matrix_order(field, g, cert.theta_order);
    if (order != cert.claimed_order)
        throw RealizationMismatch("realized order " + order.str() + " differs from claimed " +
                                  cert.claimed_order.str());
    return {field, theta, g, std::move(order)};
}

SampledOrders sample_orders(std::uint32_t q, std::size_t count, std::uint64_t seed)
{
    if (q != 3 && q != 5)
        throw FieldError("sample_orders supports q in {3, 5}");
    if (count > 1'000'000)
        throw SizeBoundError("sample_orders: count exceeds 10^6");
    const FieldDesc& field = cached_field(q, 1);

    // Exponent of GL_4(q): semisimple orders divide some q^d - 1, unipotent
    // orders are at most the least power of p that is >= 4.
    BigInt exponent = 1;
    for (unsigned d = 1; d <= 4; ++d)
        exponent = lcm(exponent, ipow(BigInt{q}, d) - 1);
    BigInt unipotent = 1;
    while (unipotent < 4)
        unipotent *= q;
    exponent *= unipotent;

    std::mt19937_64 rng(seed);
    SampledOrders out;
    out.sl.reserve(count);
    out.psl.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        Matrix4 g;
        FieldElem det;
        do {
            for (auto& e : g.a)
                e = field.from_int(rng() % q);
            det = determinant(field, g);
        } while (field.is_zero(det));
        const FieldElem scale = field.inv(det);
        for (int j = 0; j < 4; ++j)
            g.at(0, j) = field.mul(g.at(0, j), scale);

        BigInt order = matrix_order(field, g, exponent);
        out.psl.push_back(projective_order(field, g, order));
        out.sl.push_back(std::move(order));
    }
    return out;
}

} // namespace l4cov
