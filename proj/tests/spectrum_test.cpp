#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "l4cov/spectrum.hpp"
#include "l4cov/witness.hpp"
#include "oracles.hpp"

namespace {

using l4cov::BigInt;
using l4cov::GroupKind;
using l4cov::Sign;

const l4cov::SpectrumTable& psl(Sign eps, std::uint32_t p, std::uint32_t m)
{
    static std::map<std::tuple<int, std::uint32_t, std::uint32_t>, l4cov::SpectrumTable> cache;
    auto key = std::make_tuple(l4cov::sign_value(eps), p, m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, l4cov::omega(l4cov::derive(eps, p, m), GroupKind::PSL)).first;
    return it->second;
}

TEST(Orbits, Examples)
{
    const auto g = l4cov::derive(Sign::Plus, 3, 1);
    EXPECT_EQ(l4cov::orbit_modulus(g, 1), 2u);
    EXPECT_EQ(l4cov::enumerate_orbits(g, 1).size(), 2u);
    EXPECT_EQ(l4cov::orbit_modulus(g, 2), 8u);
    const auto d2 = l4cov::enumerate_orbits(g, 2);
    ASSERT_EQ(d2.size(), 3u);
    EXPECT_EQ(d2[0].e, 1u);
    EXPECT_EQ(d2[1].e, 2u);
    EXPECT_EQ(d2[2].e, 5u);

    const auto u = l4cov::derive(Sign::Minus, 3, 1);
    EXPECT_EQ(l4cov::orbit_modulus(u, 1), 4u);
    EXPECT_EQ(l4cov::enumerate_orbits(u, 1).size(), 4u);
}

// Orbit counts by exact size agree with a direct scan of Z/M_d.
TEST(Orbits, PartitionResidues)
{
    for (Sign eps : {Sign::Plus, Sign::Minus})
        for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
            const auto g = l4cov::derive(eps, p, m);
            const std::uint64_t q = static_cast<std::uint64_t>(g.q);
            for (unsigned d = 1; d <= 4; ++d) {
                const std::uint64_t M = l4cov::orbit_modulus(g, d);
                const std::uint64_t mult = eps == Sign::Plus ? q % M : (M - q % M) % M;
                const auto hist = oracle::orbit_size_histogram(M, mult);
                std::uint64_t covered = 0;
                for (unsigned dd = 1; dd <= d; ++dd) {
                    if (d % dd)
                        continue;
                    const auto orbits = l4cov::enumerate_orbits(g, dd);
                    const auto it = hist.find(dd);
                    EXPECT_EQ(orbits.size(), it == hist.end() ? 0u : it->second) << q << ' ' << d << ' ' << dd;
                    covered += dd * orbits.size();
                    for (const auto& o : orbits) {
                        EXPECT_EQ(o.d, dd);
                        EXPECT_LT(o.e, l4cov::orbit_modulus(g, dd));
                    }
                }
                EXPECT_EQ(covered, M);
            }
        }
}

TEST(Omega, PSL43Examples)
{
    const auto& t = psl(Sign::Plus, 3, 1);
    for (int x : {1, 5, 13, 8, 9})
        EXPECT_TRUE(l4cov::member(t, x)) << x;
    for (int x : {15, 39, 24})
        EXPECT_FALSE(l4cov::member(t, x)) << x;
    const bool has40 = std::any_of(t.orders.begin(), t.orders.end(), [](const BigInt& o) { return o % 40 == 0; });
    EXPECT_EQ(l4cov::member(t, 40), has40);
    EXPECT_TRUE(std::is_sorted(t.orders.begin(), t.orders.end()));
    EXPECT_EQ(std::adjacent_find(t.orders.begin(), t.orders.end()), t.orders.end());
}

TEST(Omega, UnipotentPart)
{
    for (Sign eps : {Sign::Plus, Sign::Minus})
        for (std::uint32_t p : {3u, 5u, 7u}) {
            const auto& t = psl(eps, p, 1);
            // Blocks have size at most 4: p^2 occurs only for p = 3.
            const BigInt top = p == 3 ? 9 : p;
            EXPECT_TRUE(l4cov::member(t, top));
            EXPECT_FALSE(l4cov::member(t, top * p));
        }
}

TEST(Omega, PslOrdersDivideSlOrders)
{
    for (Sign eps : {Sign::Plus, Sign::Minus})
        for (std::uint32_t p : {3u, 5u}) {
            const auto g = l4cov::derive(eps, p, 1);
            const auto sl = l4cov::omega(g, GroupKind::SL);
            const auto& pl = psl(eps, p, 1);
            for (const auto& o : pl.orders)
                EXPECT_TRUE(l4cov::member(sl, o)) << o;
            // |g| / |gZ| divides |Z|.
            for (const auto& o : sl.orders)
                EXPECT_TRUE(std::any_of(pl.orders.begin(), pl.orders.end(), [&](const BigInt& x) {
                    return o % x == 0 && g.center_order % (o / x) == 0;
                })) << o;
        }
}

// Constructed witnesses: |g| in ω(L) and p|g| outside it.
TEST(Omega, WitnessOrdersAreAdmissible)
{
    for (Sign eps : {Sign::Plus, Sign::Minus})
        for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
            const auto g = l4cov::derive(eps, p, m);
            const auto& t = psl(eps, p, m);
            for (const auto& prof : l4cov::all_profiles(m)) {
                const auto c = l4cov::construct(g, prof);
                EXPECT_TRUE(l4cov::member(t, c.claimed_order));
                EXPECT_FALSE(l4cov::member(t, c.target_order));
            }
        }
}

TEST(Omega, RejectsLargeQ)
{
    EXPECT_THROW(l4cov::omega(l4cov::derive(Sign::Plus, 29, 1), GroupKind::PSL), l4cov::SpectrumError);
    EXPECT_NO_THROW(l4cov::omega(l4cov::derive(Sign::Plus, 3, 1), GroupKind::PSL, 3));
}

TEST(Dump, RoundTrip)
{
    const auto& t = psl(Sign::Minus, 3, 1);
    const std::string text = l4cov::format_dump(t);
    EXPECT_EQ(text.rfind("# epsilon=- q=3 group=PSL\n", 0), 0u);
    const auto back = l4cov::parse_dump(text);
    EXPECT_EQ(back.params, t.params);
    EXPECT_EQ(back.group, t.group);
    EXPECT_EQ(back.orders, t.orders);
}

TEST(Dump, RejectsMalformed)
{
    EXPECT_THROW(l4cov::parse_dump("1\n2\n"), l4cov::SpectrumError);
    EXPECT_THROW(l4cov::parse_dump("# epsilon=+ q=3 group=PSL\n2\n1\n"), l4cov::SpectrumError);
    EXPECT_THROW(l4cov::parse_dump("# epsilon=+ q=3 group=PSL\n1\n2"), l4cov::SpectrumError);
    EXPECT_THROW(l4cov::parse_dump("# epsilon=+ q=4 group=PSL\n1\n"), l4cov::SpectrumError);
    EXPECT_THROW(l4cov::parse_dump("# epsilon=+ q=3 group=GL\n1\n"), l4cov::SpectrumError);
    EXPECT_NO_THROW(l4cov::parse_dump("# epsilon=+ q=3 group=SL\n1\n"));
}

} // namespace
