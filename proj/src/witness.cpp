#include "l4cov/witness.hpp"

#include <algorithm>

namespace l4cov {

namespace {

void validate_profile(const Profile& profile, const GroupParams& params)
{
    if (profile.ks.size() != params.m)
        throw WitnessError("profile length " + std::to_string(profile.ks.size()) +
                           " does not match m = " + std::to_string(params.m));
    for (int k : profile.ks) {
        if (k < 0 || k > 3)
            throw WitnessError("profile entry " + std::to_string(k) + " is outside {0,1,2,3}");
    }
}

BigInt p_power(const GroupParams& params, unsigned i)
{
    return ipow(BigInt{params.p}, i);
}

BigInt fixed_point_exponent(const std::array<BigInt, 4>& exps, const std::vector<Selection>& sels,
                            const GroupParams& params, const BigInt& N)
{
    BigInt total = 0;
    for (const auto& s : sels) {
        BigInt part = 0;
        for (int pos : s.positions)
            part += exps[static_cast<std::size_t>(pos - 1)];
        total += p_power(params, s.factor) * part;
    }
    return mod_floor(total, N);
}

std::vector<Selection> selections_by_k(const Profile& profile,
                                       const std::array<std::vector<int>, 4>& shape_for_k)
{
    std::vector<Selection> out;
    for (std::size_t i = 0; i < profile.ks.size(); ++i) {
        const int k = profile.ks[i];
        if (k > 0)
            out.push_back({static_cast<unsigned>(i), shape_for_k[static_cast<std::size_t>(k)]});
    }
    return out;
}

Selection& selection_for(std::vector<Selection>& sels, unsigned factor)
{
    auto it = std::find_if(sels.begin(), sels.end(), [&](const Selection& s) { return s.factor == factor; });
    if (it == sels.end())
        throw ConstructionError("no selection for factor " + std::to_string(factor));
    return *it;
}

std::array<BigInt, 4> reduce_all(std::array<BigInt, 4> exps, const BigInt& N)
{
    for (auto& e : exps)
        e = mod_floor(e, N);
    return exps;
}

bool values_distinct(const std::array<BigInt, 4>& exps, const Selection& s)
{
    for (std::size_t u = 0; u < s.positions.size(); ++u)
        for (std::size_t v = u + 1; v < s.positions.size(); ++v)
            if (exps[static_cast<std::size_t>(s.positions[u] - 1)] ==
                exps[static_cast<std::size_t>(s.positions[v] - 1)])
                return false;
    return true;
}

// The two legal case-D shapes per k; the first is the baseline.
const std::vector<int>& case_d_shape(int k, bool alternate)
{
    static const std::array<std::array<std::vector<int>, 2>, 4> shapes = {{
        {{{}, {}}},
        {{{3}, {4}}},
        {{{1, 2}, {3, 4}}},
        {{{1, 2, 4}, {1, 2, 3}}},
    }};
    return shapes[static_cast<std::size_t>(k)][alternate ? 1 : 0];
}

Adjustment toggle_shape(std::vector<Selection>& sels, unsigned factor, int k, Adjustment::Kind kind)
{
    Selection& s = selection_for(sels, factor);
    const bool is_baseline = s.positions == case_d_shape(k, false);
    Adjustment adj{kind, factor, s.positions, case_d_shape(k, is_baseline)};
    s.positions = adj.to;
    return adj;
}

WitnessCertificate build_case_a(const GroupParams& params, const Profile& profile)
{
    WitnessCertificate c;
    const BigInt N = primitive_divisor_of(params, 4);
    const BigInt eq = params.eps_q();
    c.theta_order = N;
    c.exponents = reduce_all({BigInt{1}, eq, eq * eq, eq * eq * eq}, N);
    c.selections = selections_by_k(profile, {{{}, {}, {1, 3}, {}}});
    c.claimed_order = N;
    return c;
}

WitnessCertificate build_case_b(const GroupParams& params, const Profile& profile)
{
    WitnessCertificate c;
    const BigInt N = primitive_divisor_of(params, 3);
    const BigInt eq = params.eps_q();
    c.theta_order = N;
    c.exponents = reduce_all({BigInt{1}, eq, eq * eq, BigInt{0}}, N);
    c.selections = selections_by_k(profile, {{{}, {4}, {}, {1, 2, 3}}});
    c.claimed_order = N;
    return c;
}

WitnessCertificate build_case_c(const GroupParams& params, const Profile& profile)
{
    WitnessCertificate c;
    const BigInt N = params.two_part_q2m1;
    const BigInt half = N / 2;
    c.theta_order = N;
    // θ^{q+ε} = -1, so θ^{1+εq} = θ^{N/2} and the determinant is 1.
    c.exponents = reduce_all({BigInt{1}, params.eps_q(), half, BigInt{0}}, N);
    c.selections = selections_by_k(profile, {{{}, {4}, {3, 4}, {1, 2, 4}}});
    c.claimed_order = N;

    if (fixed_point_exponent(c.exponents, c.selections, params, N) == half) {
        auto it = std::find_if(c.selections.begin(), c.selections.end(), [&](const Selection& s) {
            const int k = profile.ks[s.factor];
            return k == 1 || k == 3;
        });
        if (it == c.selections.end())
            throw ConstructionError("case C: no factor with k in {1,3} to fix the sign");
        // Replace the characteristic value 1 (position 4) by -1 (position 3).
        std::replace(it->positions.begin(), it->positions.end(), 4, 3);
        std::sort(it->positions.begin(), it->positions.end());
    }
    return c;
}

WitnessCertificate build_case_d(const GroupParams& params, const Profile& profile)
{
    if (params.q <= 3)
        throw WitnessError("case D requires q > 3");
    CaseDInternals d;
    d.r = primitive_divisor_of(params, 2);
    d.t = d.r * params.two_part_qme;

    auto sels = selections_by_k(profile, {{{}, case_d_shape(1, false), case_d_shape(2, false),
                                           case_d_shape(3, false)}});
    const ABPair base = compute_AB(profile, params, sels);
    auto balanced = balance_two_parts(base.A, base.B, profile, params, std::move(sels));
    const ABSolution sol = solve_ab(balanced.A, balanced.B, params);

    d.a = sol.a;
    d.b = sol.b;
    d.A = balanced.A;
    d.B = balanced.B;
    d.adjustments = std::move(balanced.adjustments);

    WitnessCertificate c;
    const BigInt eq = params.eps_q();
    c.theta_order = d.t;
    c.exponents = reduce_all({d.a, eq * d.a, d.r * d.b, -d.a * (1 + eq) - d.r * d.b}, d.t);
    c.selections = std::move(balanced.selections);
    c.claimed_order = d.t;

    // Distinct characteristic values per factor. With a and b of opposite
    // parity the only shape that could collide, {3,4}, differs by 2 (mod 4).
    for (const auto& s : c.selections) {
        if (!values_distinct(c.exponents, s))
            throw ConstructionError("case D: coinciding characteristic values in factor " +
                                    std::to_string(s.factor));
    }
    c.case_d = std::move(d);
    return c;
}

} // namespace

std::vector<Profile> all_profiles(unsigned m)
{
    std::vector<Profile> out;
    std::size_t total = 1;
    for (unsigned i = 0; i < m; ++i)
        total *= 4;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        Profile p;
        p.ks.resize(m);
        std::size_t c = code;
        for (unsigned i = m; i-- > 0;) {
            p.ks[i] = static_cast<int>(c % 4);
            c /= 4;
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string_view to_string(CaseTag tag)
{
    switch (tag) {
    case CaseTag::A_R4:
        return "A_R4";
    case CaseTag::B_R3:
        return "B_R3";
    case CaseTag::C_QcongMinusEps:
        return "C_QcongMinusEps";
    case CaseTag::D_QcongEps:
        return "D_QcongEps";
    }
    return "?";
}

std::optional<CaseTag> parse_case_tag(std::string_view text)
{
    for (CaseTag t : {CaseTag::A_R4, CaseTag::B_R3, CaseTag::C_QcongMinusEps, CaseTag::D_QcongEps}) {
        if (to_string(t) == text)
            return t;
    }
    return std::nullopt;
}

std::string_view to_string(Adjustment::Kind kind)
{
    return kind == Adjustment::Kind::FlipK13 ? "flip_k13" : "swap_k2";
}

CaseTag classify_profile(const Profile& profile, const GroupParams& params)
{
    validate_profile(profile, params);
    const auto& ks = profile.ks;
    if (std::all_of(ks.begin(), ks.end(), [](int k) { return k == 0 || k == 2; }))
        return CaseTag::A_R4;
    if (std::none_of(ks.begin(), ks.end(), [](int k) { return k == 2; }))
        return CaseTag::B_R3;
    return mod_floor(params.q - params.eps(), 4) == 0 ? CaseTag::D_QcongEps
                                                      : CaseTag::C_QcongMinusEps;
}

WitnessCertificate construct(const GroupParams& params, const Profile& profile)
{
    const CaseTag tag = classify_profile(profile, params);
    WitnessCertificate c;
    switch (tag) {
    case CaseTag::A_R4:
        c = build_case_a(params, profile);
        break;
    case CaseTag::B_R3:
        c = build_case_b(params, profile);
        break;
    case CaseTag::C_QcongMinusEps:
        c = build_case_c(params, profile);
        break;
    case CaseTag::D_QcongEps:
        c = build_case_d(params, profile);
        break;
    }
    c.params = params;
    c.profile = profile;
    c.case_tag = tag;
    c.target_order = c.claimed_order * params.p;

    if (fixed_point_exponent(c.exponents, c.selections, params, c.theta_order) != 0)
        throw ConstructionError("constructed selections do not give a vanishing weight (case " +
                                std::string(to_string(tag)) + ")");
    return c;
}

ABPair compute_AB(const Profile& profile, const GroupParams& params,
                  const std::vector<Selection>& selections)
{
    validate_profile(profile, params);
    const BigInt eq = params.eps_q();
    // Coefficients of a and of r*b in the exponent at each position.
    const std::array<BigInt, 4> a_coef = {BigInt{1}, eq, BigInt{0}, -(1 + eq)};
    const std::array<int, 4> rb_coef = {0, 0, 1, -1};

    std::vector<bool> seen(profile.ks.size(), false);
    ABPair out{0, 0};
    for (const auto& s : selections) {
        if (s.factor >= profile.ks.size() || seen[s.factor])
            throw WitnessError("compute_AB: bad or repeated factor index " + std::to_string(s.factor));
        seen[s.factor] = true;
        const int k = profile.ks[s.factor];
        if (k == 0 || (s.positions != case_d_shape(k, false) && s.positions != case_d_shape(k, true)))
            throw WitnessError("compute_AB: malformed selection shape for factor " +
                               std::to_string(s.factor));
        const BigInt w = p_power(params, s.factor);
        for (int pos : s.positions) {
            out.A += w * a_coef[static_cast<std::size_t>(pos - 1)];
            out.B += w * rb_coef[static_cast<std::size_t>(pos - 1)];
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (profile.ks[i] > 0 && !seen[i])
            throw WitnessError("compute_AB: missing selection for factor " + std::to_string(i));
    }
    return out;
}

BalancedSelections balance_two_parts(const BigInt& A, const BigInt& B, const Profile& profile,
                                     const GroupParams& params, std::vector<Selection> selections)
{
    BalancedSelections out{std::move(selections), A, B, {}};
    if (A == 0 || B == 0)
        throw WitnessError("balance_two_parts: A and B must be nonzero");

    auto first_factor = [&](auto pred) -> std::optional<unsigned> {
        for (std::size_t i = 0; i < profile.ks.size(); ++i)
            if (pred(profile.ks[i]))
                return static_cast<unsigned>(i);
        return std::nullopt;
    };
    auto refresh = [&] {
        const ABPair ab = compute_AB(profile, params, out.selections);
        out.A = ab.A;
        out.B = ab.B;
    };

    if (two_adic_valuation(out.A) == two_adic_valuation(out.B) && two_adic_valuation(out.A) == 1) {
        const auto i = first_factor([](int k) { return k == 1 || k == 3; });
        if (!i)
            throw ConstructionError("balance_two_parts: no factor with k in {1,3}");
        out.adjustments.push_back(
            toggle_shape(out.selections, *i, profile.ks[*i], Adjustment::Kind::FlipK13));
        refresh();
    }
    if (two_adic_valuation(out.A) == two_adic_valuation(out.B)) {
        const auto i = first_factor([](int k) { return k == 2; });
        if (!i)
            throw ConstructionError("balance_two_parts: no factor with k = 2");
        out.adjustments.push_back(toggle_shape(out.selections, *i, 2, Adjustment::Kind::SwapK2));
        refresh();
    }
    if (out.A == 0 || out.B == 0 || two_adic_valuation(out.A) == two_adic_valuation(out.B))
        throw ConstructionError("balance_two_parts: 2-parts still equal after adjustments");
    return out;
}

ABSolution solve_ab(const BigInt& A, const BigInt& B, const GroupParams& params)
{
    if (A == 0 || B == 0)
        throw WitnessError("solve_ab: A and B must be nonzero");
    const unsigned vA = two_adic_valuation(A);
    const unsigned vB = two_adic_valuation(B);
    if (vA == vB)
        throw WitnessError("solve_ab: (A)_2 == (B)_2; balance first");

    const BigInt r = primitive_divisor_of(params, 2);
    const BigInt& mod = params.two_part_qme;
    const unsigned s = two_adic_valuation(mod);

    ABSolution sol;
    if (vA < vB) {
        const BigInt unit = A / two_part(A);
        const BigInt rhs = -r * (B / two_part(A));
        sol.b = 1;
        sol.a = mod_floor(rhs * inverse_mod_2pow(unit, s), mod);
        if (sol.a % r == 0)
            sol.a += mod;
    } else {
        const BigInt unit = r * (B / two_part(B));
        const BigInt rhs = -(A / two_part(B));
        sol.a = 1;
        sol.b = mod_floor(rhs * inverse_mod_2pow(unit, s), mod);
    }
    return sol;
}

} // namespace l4cov
