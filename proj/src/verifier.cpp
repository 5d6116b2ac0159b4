#include "l4cov/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace l4cov {

namespace {

std::string join(const std::array<BigInt, 4>& v)
{
    std::ostringstream out;
    out << '(' << v[0] << ',' << v[1] << ',' << v[2] << ',' << v[3] << ')';
    return out.str();
}

BigInt weight_exponent(const std::array<BigInt, 4>& exps, const std::vector<Selection>& sels,
                       std::uint32_t p, const BigInt& N)
{
    BigInt total = 0;
    for (const auto& s : sels) {
        BigInt inner = 0;
        for (int pos : s.positions)
            inner += exps[static_cast<std::size_t>(pos - 1)];
        total += ipow(BigInt{p}, s.factor) * inner;
    }
    return mod_floor(total, N);
}

bool distinct_values(const std::array<BigInt, 4>& exps, const std::vector<int>& positions)
{
    for (std::size_t u = 0; u < positions.size(); ++u)
        for (std::size_t v = u + 1; v < positions.size(); ++v)
            if (exps[static_cast<std::size_t>(positions[u] - 1)] ==
                exps[static_cast<std::size_t>(positions[v] - 1)])
                return false;
    return true;
}

CheckResult check_determinant(const WitnessCertificate& c)
{
    const auto& e = c.exponents;
    const BigInt s = mod_floor(e[0] + e[1] + e[2] + e[3], c.theta_order);
    return {"V1", s == 0, "sum of exponents mod N = " + s.str()};
}

CheckResult check_rationality(const WitnessCertificate& c)
{
    std::vector<BigInt> orig(c.exponents.begin(), c.exponents.end());
    std::vector<BigInt> twisted;
    for (const auto& e : c.exponents)
        twisted.push_back(mod_floor(e * c.params.eps_q(), c.theta_order));
    std::sort(orig.begin(), orig.end());
    std::sort(twisted.begin(), twisted.end());
    const bool ok = orig == twisted;
    return {"V2", ok, ok ? "exponent multiset stable under e -> eps*q*e"
                         : "exponent multiset not stable under e -> eps*q*e"};
}

CheckResult check_coprime(const WitnessCertificate& c)
{
    const BigInt g = gcd(c.theta_order, BigInt{c.params.p});
    return {"V3", g == 1, "gcd(N, p) = " + g.str()};
}

CheckResult check_order(const WitnessCertificate& c)
{
    BigInt order = 1;
    for (const auto& e : c.exponents)
        order = lcm(order, order_in_cyclic(c.theta_order, e));
    return {"V4", order == c.claimed_order,
            "lcm of eigenvalue orders = " + order.str() + ", claimed " + c.claimed_order.str()};
}

CheckResult check_center(const WitnessCertificate& c)
{
    if (c.claimed_order < 1)
        return {"V5", false, "claimed order is not positive"};
    if (c.claimed_order == 1)
        return {"V5", true, "trivial element"};
    for (const auto& f : factorize(c.claimed_order)) {
        const BigInt k = c.claimed_order / f.prime;
        const BigInt first = mod_floor(c.exponents[0] * k, c.theta_order);
        const bool scalar = std::all_of(c.exponents.begin(), c.exponents.end(), [&](const BigInt& e) {
            return mod_floor(e * k, c.theta_order) == first;
        });
        if (scalar)
            return {"V5", false, "g^(|g|/" + f.prime.str() + ") is scalar"};
    }
    return {"V5", true, "no power g^(|g|/l) is scalar"};
}

CheckResult check_selections(const WitnessCertificate& c, bool strict)
{
    const auto& ks = c.profile.ks;
    std::vector<int> count(ks.size(), 0);
    std::string warning;
    for (const auto& s : c.selections) {
        if (s.factor >= ks.size())
            return {"V6", false, "selection for nonexistent factor " + std::to_string(s.factor)};
        const int k = ks[s.factor];
        ++count[s.factor];
        const std::string where = "factor " + std::to_string(s.factor);
        if (k == 0)
            return {"V6", false, where + " has k = 0 but a selection"};
        if (static_cast<int>(s.positions.size()) != k)
            return {"V6", false, where + " selects " + std::to_string(s.positions.size()) +
                                     " positions, expected " + std::to_string(k)};
        std::vector<int> sorted = s.positions;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            sorted.front() < 1 || sorted.back() > 4)
            return {"V6", false, where + " positions are not distinct indices in 1..4"};
        if (!distinct_values(c.exponents, s.positions)) {
            if (strict)
                return {"V6", false, where + " selects coinciding characteristic values"};
            warning += " warning: " + where + " selects coinciding characteristic values;";
        }
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] > 0 && count[i] != 1)
            return {"V6", false, "factor " + std::to_string(i) + " has " + std::to_string(count[i]) +
                                     " selections, expected 1"};
    }
    return {"V6", true, "selections well formed" + warning};
}

CheckResult check_fixed_point(const WitnessCertificate& c)
{
    const BigInt s = weight_exponent(c.exponents, c.selections, c.params.p, c.theta_order);
    return {"V7", s == 0, "weight exponent mod N = " + s.str()};
}

CheckResult check_admissible(const WitnessCertificate& c, const SpectrumTable* spectrum)
{
    const auto targets = target_orders(c.params);
    auto it = std::find_if(targets.begin(), targets.end(), [&](const TargetOrder& t) {
        return t.applicable && t.order == c.claimed_order;
    });
    if (it == targets.end())
        return {"V8", false, "claimed order " + c.claimed_order.str() + " is not an applicable target"};
    if (c.target_order != c.claimed_order * c.params.p)
        return {"V8", false, "target order " + c.target_order.str() + " != p * claimed order"};
    std::string detail = "claimed order is " + std::string(to_string(it->kind));
    if (spectrum == nullptr)
        return {"V8", true, detail + " (target list)"};

    if (spectrum->group != GroupKind::PSL || spectrum->params.epsilon != c.params.epsilon ||
        spectrum->params.q != c.params.q)
        return {"V8", false, "spectrum table does not describe PSL_4^eps(q) for these parameters"};
    if (member(*spectrum, c.target_order))
        return {"V8", false, "oracle: target order " + c.target_order.str() + " lies in omega(L)"};
    if (!member(*spectrum, c.claimed_order))
        return {"V8", false, "oracle: claimed order " + c.claimed_order.str() + " missing from omega(L)"};
    return {"V8", true, detail + ", oracle-confirmed"};
}

} // namespace

const CheckResult* VerificationReport::find(const std::string& id) const
{
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.id == id; });
    return it == checks.end() ? nullptr : &*it;
}

bool VerificationReport::passed(const std::string& id) const
{
    const CheckResult* c = find(id);
    return c != nullptr && c->passed;
}

void check_well_formed(const WitnessCertificate& cert)
{
    GroupParams expected;
    try {
        expected = derive(cert.params.epsilon, cert.params.p, cert.params.m);
    } catch (const ParamError& e) {
        throw MalformedCertificate(std::string("parameters: ") + e.what());
    }
    if (!(expected == cert.params))
        throw MalformedCertificate("derived parameter fields are inconsistent with (eps, p, m)");
    if (cert.profile.ks.size() != cert.params.m)
        throw MalformedCertificate("profile length differs from m");
    for (int k : cert.profile.ks) {
        if (k < 0 || k > 3)
            throw MalformedCertificate("profile entry outside {0,1,2,3}");
    }
    if (cert.theta_order < 1)
        throw MalformedCertificate("theta order must be positive");
    for (const auto& e : cert.exponents) {
        if (e < 0 || e >= cert.theta_order)
            throw MalformedCertificate("exponents must be reduced to [0, N): " + join(cert.exponents));
    }
    for (const auto& s : cert.selections) {
        if (s.positions.empty() || s.positions.size() > 4)
            throw MalformedCertificate("selection sizes must lie in 1..4");
        for (int pos : s.positions) {
            if (pos < 1 || pos > 4)
                throw MalformedCertificate("selection position outside 1..4");
        }
    }
}

VerificationReport verify(const WitnessCertificate& cert, const VerifyOptions& options)
{
    check_well_formed(cert);
    VerificationReport report;
    report.checks.push_back(check_determinant(cert));
    report.checks.push_back(check_rationality(cert));
    report.checks.push_back(check_coprime(cert));
    report.checks.push_back(check_order(cert));
    report.checks.push_back(check_center(cert));
    report.checks.push_back(check_selections(cert, options.strict_distinct_values));
    report.checks.push_back(check_fixed_point(cert));
    report.checks.push_back(check_admissible(cert, options.spectrum));
    report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const CheckResult& c) { return c.passed; });
    return report;
}

BigInt scalar_order(const BigInt& N, const std::array<BigInt, 4>& exponents)
{
    BigInt k = 1;
    for (std::size_t j = 1; j < 4; ++j)
        k = lcm(k, order_in_cyclic(N, exponents[j] - exponents[0]));
    return k;
}

std::vector<std::vector<Selection>> brute_force_selections(const WitnessCertificate& cert)
{
    check_well_formed(cert);
    if (cert.profile.ks.size() > 6)
        throw SizeBoundError("brute_force_selections: m must be at most 6");

    // All subsets of {1,2,3,4} of each size, lexicographic.
    std::array<std::vector<std::vector<int>>, 5> subsets;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<int> s;
        for (int b = 0; b < 4; ++b)
            if (mask & (1u << b))
                s.push_back(b + 1);
        subsets[s.size()].push_back(s);
    }
    for (auto& group : subsets)
        std::sort(group.begin(), group.end());

    std::vector<unsigned> factors;
    for (std::size_t i = 0; i < cert.profile.ks.size(); ++i)
        if (cert.profile.ks[i] > 0)
            factors.push_back(static_cast<unsigned>(i));

    std::vector<std::vector<Selection>> out;
    std::vector<Selection> current;
    auto recurse = [&](auto&& self, std::size_t idx) -> void {
        if (idx == factors.size()) {
            if (weight_exponent(cert.exponents, current, cert.params.p, cert.theta_order) == 0)
                out.push_back(current);
            return;
        }
        const unsigned f = factors[idx];
        for (const auto& s : subsets[static_cast<std::size_t>(cert.profile.ks[f])]) {
            if (!distinct_values(cert.exponents, s))
                continue;
            current.push_back({f, s});
            self(self, idx + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

} // namespace l4cov
