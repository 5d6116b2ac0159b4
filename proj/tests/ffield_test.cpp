#include <gtest/gtest.h>

#include <algorithm>

#include "l4cov/ffield.hpp"
#include "l4cov/spectrum.hpp"
#include "oracles.hpp"

namespace {

using l4cov::BigInt;
using l4cov::FieldDesc;
using l4cov::Sign;

using Poly = std::vector<std::uint32_t>;

// Polynomial remainder over GF(p), coefficients low to high.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    auto inv = [&](std::uint64_t x) {
        std::uint64_t r = 1;
        for (std::uint32_t e = p - 2, base = static_cast<std::uint32_t>(x % p); e; e >>= 1) {
            if (e & 1)
                r = r * base % p;
            base = static_cast<std::uint32_t>(std::uint64_t{base} * base % p);
        }
        return r;
    };
    const std::uint64_t lead_inv = inv(b.back());
    while (a.size() >= b.size()) {
        const std::uint64_t f = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * b[i]) % p);
        a.pop_back();
    }
    return a;
}

// Irreducible iff no monic factor of degree 1..deg/2 divides, by exhaustive search.
bool irreducible_by_search(const Poly& f, std::uint32_t p)
{
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            g[d] = 1;
            std::uint64_t x = idx;
            for (std::size_t i = 0; i < d; ++i, x /= p)
                g[i] = static_cast<std::uint32_t>(x % p);
            const Poly r = poly_mod(f, g, p);
            if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; }))
                return false;
        }
    }
    return true;
}

TEST(BuildField, Examples)
{
    const FieldDesc f1 = l4cov::build_field(3, 1);
    EXPECT_EQ(f1.size(), 3);
    EXPECT_EQ(f1.modulus(), (Poly{0, 1}));

    const FieldDesc f2 = l4cov::build_field(3, 2);
    EXPECT_EQ(f2.size(), 9);
    EXPECT_EQ(f2.modulus(), (Poly{1, 0, 1})); // x^2 + 1: -1 is a non-square mod 3

    const FieldDesc f24 = l4cov::build_field(3, 24);
    EXPECT_EQ(f24.size(), oracle::big_pow(3, 24));
    EXPECT_TRUE(l4cov::is_irreducible(3, f24.modulus()));

    EXPECT_THROW(l4cov::build_field(4, 2), l4cov::FieldError);
    EXPECT_THROW(l4cov::build_field(3, 33), l4cov::SizeBoundError);
}

TEST(BuildField, FirstIrreducibleInScanOrder)
{
    for (std::uint32_t p : {3u, 5u})
        for (unsigned k = 1; k <= 4; ++k) {
            const Poly chosen = l4cov::build_field(p, k).modulus();
            // Everything earlier in the scan is reducible.
            std::uint64_t idx = 0;
            for (;; ++idx) {
                Poly f(k + 1, 0);
                f[k] = 1;
                std::uint64_t x = idx;
                for (unsigned i = 0; i < k; ++i, x /= p)
                    f[i] = static_cast<std::uint32_t>(x % p);
                const bool irr = irreducible_by_search(f, p);
                EXPECT_EQ(l4cov::is_irreducible(p, f), irr);
                if (irr) {
                    EXPECT_EQ(f, chosen);
                    break;
                }
            }
        }
}

TEST(IsIrreducible, AgreesWithSearch)
{
    for (std::uint32_t p : {3u, 5u, 7u}) {
        oracle::SplitMix rng{p};
        for (int i = 0; i < 200; ++i) {
            const unsigned k = 2 + static_cast<unsigned>(rng.next() % 4);
            Poly f(k + 1);
            for (auto& c : f)
                c = static_cast<std::uint32_t>(rng.next() % p);
            f[k] = 1;
            EXPECT_EQ(l4cov::is_irreducible(p, f), irreducible_by_search(f, p));
        }
    }
}

TEST(FieldDesc, RejectsReducibleModulus)
{
    EXPECT_THROW(FieldDesc(3, {2, 0, 1}), l4cov::FieldError); // x^2 - 1
    EXPECT_NO_THROW(FieldDesc(3, {1, 0, 1}));
}

TEST(FieldDesc, Axioms)
{
    for (auto [p, k] : {std::pair{3u, 1u}, {3u, 4u}, {5u, 3u}, {7u, 12u}, {3u, 24u}}) {
        const FieldDesc f = l4cov::build_field(p, k);
        oracle::SplitMix rng{p * 100 + k};
        auto draw = [&] { return f.from_index(BigInt{rng.next()} % f.size()); };
        for (int i = 0; i < 300; ++i) {
            const auto a = draw(), b = draw(), c = draw();
            EXPECT_EQ(f.add(a, b), f.add(b, a));
            EXPECT_EQ(f.mul(a, b), f.mul(b, a));
            EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            EXPECT_EQ(f.sub(f.add(a, b), b), a);
            EXPECT_EQ(f.mul(a, f.one()), a);
            if (!f.is_zero(a)) {
                EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
                EXPECT_EQ(f.pow(a, f.size() - 1), f.one());
            }
            // Frobenius is additive.
            EXPECT_EQ(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        }
        EXPECT_THROW(f.inv(f.zero()), l4cov::FieldError);
    }
}

TEST(ElementOfOrder, Examples)
{
    const FieldDesc f4 = l4cov::build_field(3, 4);
    const auto x = l4cov::element_of_order(f4, 5);
    EXPECT_EQ(f4.pow(x, 5), f4.one());
    EXPECT_NE(x, f4.one());

    const FieldDesc f2 = l4cov::build_field(3, 2);
    EXPECT_EQ(l4cov::element_of_order(f2, 1), f2.one());
    EXPECT_THROW(l4cov::element_of_order(f2, 5), l4cov::FieldError);

    const auto gen = l4cov::element_of_order(f4, 80);
    for (int d : {1, 2, 4, 5, 8, 10, 16, 20, 40})
        EXPECT_NE(f4.pow(gen, d), f4.one()) << d;
}

TEST(Realize, Examples)
{
    const auto d = l4cov::construct(l4cov::derive(Sign::Plus, 3, 2), {{2, 1}});
    const auto rd = l4cov::realize(d);
    EXPECT_EQ(rd.computed_order, 40);
    EXPECT_EQ(rd.field.k(), 24u);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j)
                EXPECT_TRUE(rd.field.is_zero(rd.matrix.at(i, j)));
    EXPECT_EQ(l4cov::determinant(rd.field, rd.matrix), rd.field.one());

    const auto a = l4cov::construct(l4cov::derive(Sign::Plus, 3, 1), {{0}});
    const auto ra = l4cov::realize(a);
    EXPECT_EQ(ra.computed_order, 5);
    EXPECT_EQ(ra.field.k(), 12u);

    auto id = a;
    id.theta_order = 1;
    id.exponents = {0, 0, 0, 0};
    id.claimed_order = 1;
    const auto ri = l4cov::realize(id);
    EXPECT_EQ(ri.computed_order, 1);
    EXPECT_TRUE(l4cov::is_identity(ri.field, ri.matrix));

    auto wrong = d;
    wrong.claimed_order = 20;
    EXPECT_THROW(l4cov::realize(wrong), l4cov::RealizationMismatch);

    const auto big = l4cov::construct(l4cov::derive(Sign::Plus, 3, 3), {{0, 0, 0}});
    EXPECT_THROW(l4cov::realize(big), l4cov::SizeBoundError);
}

TEST(Matrix, OrdersOfSmallExamples)
{
    const FieldDesc f = l4cov::build_field(3, 1);
    // A single Jordan block of size 4 has order 9 in characteristic 3.
    auto j = l4cov::identity_matrix(f);
    for (int i = 0; i < 3; ++i)
        j.at(i, i + 1) = f.one();
    EXPECT_EQ(l4cov::matrix_order(f, j, 9 * 80), 9);
    // -I is scalar of order 2.
    auto neg = l4cov::identity_matrix(f);
    for (int i = 0; i < 4; ++i)
        neg.at(i, i) = f.from_int(2);
    EXPECT_EQ(l4cov::matrix_order(f, neg, 720), 2);
    EXPECT_EQ(l4cov::projective_order(f, neg, 2), 1);
    EXPECT_EQ(l4cov::determinant(f, neg), f.one());
}

TEST(Sample, SingleOrderDividesExponent)
{
    const auto s = l4cov::sample_orders(3, 1, 42);
    ASSERT_EQ(s.sl.size(), 1u);
    ASSERT_EQ(s.psl.size(), 1u);
    // exp(SL_4(3)) divides lcm(2, 8, 26, 80) * 9 = 9360 * 9
    EXPECT_EQ(BigInt{9360 * 9} % s.sl[0], 0);
    EXPECT_EQ(s.sl[0] % s.psl[0], 0);
    EXPECT_THROW(l4cov::sample_orders(7, 1, 1), l4cov::FieldError);
}

TEST(Sample, DeterministicPerSeed)
{
    const auto a = l4cov::sample_orders(5, 200, 9);
    const auto b = l4cov::sample_orders(5, 200, 9);
    EXPECT_EQ(a.sl, b.sl);
    EXPECT_EQ(a.psl, b.psl);
}

TEST(Sample, ContainedInSpectrum)
{
    for (std::uint32_t q : {3u, 5u}) {
        const auto params = l4cov::derive(Sign::Plus, q, 1);
        const auto sl = l4cov::omega(params, l4cov::GroupKind::SL);
        const auto psl = l4cov::omega(params, l4cov::GroupKind::PSL);
        const auto s = l4cov::sample_orders(q, 3000, 1);
        for (const auto& o : s.sl)
            EXPECT_TRUE(l4cov::member(sl, o)) << o;
        for (const auto& o : s.psl)
            EXPECT_TRUE(l4cov::member(psl, o)) << o;
    }
}

// The reverse direction: sampling reaches every nontrivial order in the table.
TEST(Sample, CoversSpectrum)
{
    const auto params = l4cov::derive(Sign::Plus, 3, 1);
    const auto s = l4cov::sample_orders(3, 100000, 7);
    for (auto [kind, seen] : {std::pair{l4cov::GroupKind::SL, &s.sl}, {l4cov::GroupKind::PSL, &s.psl}}) {
        const auto table = l4cov::omega(params, kind);
        for (const auto& o : table.orders)
            if (o > 1)
                EXPECT_NE(std::find(seen->begin(), seen->end(), o), seen->end()) << o;
    }
}

} // namespace
