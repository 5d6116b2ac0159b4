#include "l4cov/params.hpp"

#include <mutex>
#include <map>
#include <tuple>

namespace l4cov {

GroupParams derive(Sign epsilon, std::uint32_t p, std::uint32_t m)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw ParamError("p = " + std::to_string(p) + " is not an odd prime");
    if (m < 1)
        throw ParamError("m must be at least 1");

    GroupParams g;
    g.epsilon = epsilon;
    g.p = p;
    g.m = m;
    g.q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        g.q *= p;
        if (g.q > kMaxQ)
            throw ParamError("q = " + std::to_string(p) + "^" + std::to_string(m) +
                             " exceeds the supported bound " + std::to_string(kMaxQ));
    }
    const int e = g.eps();
    g.q_minus_eps = g.q - e;
    g.q_plus_eps = g.q + e;
    g.phi3 = g.q * g.q + e * g.q + 1;
    g.phi4 = g.q * g.q + 1;
    g.two_part_qme = two_part(g.q_minus_eps);
    g.two_part_q2m1 = two_part(g.q * g.q - 1);
    g.center_order = static_cast<unsigned>(gcd(BigInt{4}, g.q_minus_eps));
    return g;
}

GroupParams derive_from_q(Sign epsilon, const BigInt& q)
{
    if (q < 3 || q > kMaxQ)
        throw ParamError("q = " + q.str() + " is outside [3, " + std::to_string(kMaxQ) + "]");
    const auto factors = factorize(q);
    if (factors.size() != 1 || factors[0].prime == 2)
        throw ParamError("q = " + q.str() + " is not a power of an odd prime");
    return derive(epsilon, static_cast<std::uint32_t>(factors[0].prime), factors[0].exponent);
}

std::string_view to_string(TargetKind kind)
{
    switch (kind) {
    case TargetKind::R4:
        return "R4";
    case TargetKind::R3:
        return "R3";
    case TargetKind::TwoPartQ2M1:
        return "TwoPartQ2M1";
    case TargetKind::R2TimesTwoPart:
        return "R2TimesTwoPart";
    }
    return "?";
}

BigInt primitive_divisor_of(const GroupParams& params, unsigned n)
{
    // Memoized: the sweep asks for the same few values thousands of times.
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint32_t, std::uint32_t, unsigned>, std::optional<BigInt>> cache;
    const auto key = std::make_tuple(params.eps(), params.p, params.m, n);
    std::optional<BigInt> r;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) {
            r = it->second;
        } else {
            r = primitive_prime_divisor(params.q, n, params.epsilon);
            cache.emplace(key, r);
        }
    }
    if (!r)
        throw ParamError("no primitive prime divisor r_" + std::to_string(n) + "(" +
                         sign_char(params.epsilon) + params.q.str() + ")");
    return *r;
}

std::vector<TargetOrder> target_orders(const GroupParams& params)
{
    std::vector<TargetOrder> out;
    out.push_back({TargetKind::R4, primitive_divisor_of(params, 4), true});
    out.push_back({TargetKind::R3, primitive_divisor_of(params, 3), true});
    out.push_back({TargetKind::TwoPartQ2M1, params.two_part_q2m1, true});

    const bool applicable = params.q > 3 && mod_floor(params.q - params.eps(), 4) == 0;
    TargetOrder r2{TargetKind::R2TimesTwoPart, 0, applicable};
    if (applicable) {
        r2.order = primitive_divisor_of(params, 2) * params.two_part_qme;
    } else if (auto r = primitive_prime_divisor(params.q, 2, params.epsilon)) {
        r2.order = *r * params.two_part_qme;
    }
    out.push_back(r2);
    return out;
}

} // namespace l4cov
