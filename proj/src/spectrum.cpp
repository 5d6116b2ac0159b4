#include "l4cov/spectrum.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace l4cov {

namespace {

using detail::gcd64;
using detail::mulmod64;

std::uint64_t to_u64(const BigInt& v, const char* what)
{
    if (v < 0 || v > BigInt{std::numeric_limits<std::uint64_t>::max()})
        throw SpectrumError(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(v);
}

// εq reduced modulo M.
std::uint64_t twist_mod(const GroupParams& params, std::uint64_t M)
{
    return to_u64(mod_floor(params.eps_q(), M), "twist");
}

const std::vector<std::vector<unsigned>>& partitions_of(unsigned n)
{
    static const std::vector<std::vector<std::vector<unsigned>>> table = {
        {{}},
        {{1}},
        {{2}, {1, 1}},
        {{3}, {2, 1}, {1, 1, 1}},
        {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}},
    };
    return table.at(n);
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b)
{
    return a / gcd64(a, b) * b;
}

// Smallest power of p that is at least the largest Jordan block.
std::uint64_t unipotent_order(const ClassDatum& datum, std::uint32_t p)
{
    unsigned block = 1;
    for (const auto& entry : datum.entries)
        for (unsigned b : entry.partition)
            block = std::max(block, b);
    std::uint64_t pp = 1;
    while (pp < block)
        pp *= p;
    return pp;
}

struct Item {
    OrbitRep orbit;
    std::uint64_t norm; // exponent of the product of the orbit's eigenvalues, mod Q
};

} // namespace

std::string_view to_string(GroupKind g)
{
    return g == GroupKind::SL ? "SL" : "PSL";
}

std::optional<GroupKind> parse_group_kind(std::string_view text)
{
    if (text == "SL")
        return GroupKind::SL;
    if (text == "PSL")
        return GroupKind::PSL;
    return std::nullopt;
}

std::uint64_t orbit_modulus(const GroupParams& params, unsigned d)
{
    if (d < 1 || d > 4)
        throw SpectrumError("orbit size must be in 1..4");
    return to_u64(abs(ipow(params.eps_q(), d) - 1), "M_d");
}

std::uint64_t ambient_modulus(const GroupParams& params)
{
    return to_u64(ipow(params.q, 12) - 1, "q^12 - 1");
}

std::vector<OrbitRep> enumerate_orbits(const GroupParams& params, unsigned d)
{
    const std::uint64_t M = orbit_modulus(params, d);
    const std::uint64_t Q = ambient_modulus(params);
    const std::uint64_t twist = twist_mod(params, M);
    const std::uint64_t scale = Q / M;

    std::vector<bool> seen(M, false);
    std::vector<OrbitRep> out;
    for (std::uint64_t e = 0; e < M; ++e) {
        if (seen[e])
            continue;
        unsigned size = 0;
        std::uint64_t x = e;
        do {
            seen[x] = true;
            x = mulmod64(x, twist, M);
            ++size;
        } while (x != e);
        // Ascending scan meets each orbit first at its minimum.
        if (size == d)
            out.push_back({d, e, mulmod64(e, scale, Q)});
    }
    return out;
}

void for_each_class(const GroupParams& params, const std::function<void(const ClassDatum&)>& visit,
                    std::uint64_t q_bound)
{
    if (params.q > q_bound)
        throw SpectrumError("q = " + params.q.str() + " exceeds the spectrum bound " +
                            std::to_string(q_bound));
    const std::uint64_t Q = ambient_modulus(params);
    const std::uint64_t twist = twist_mod(params, Q);

    std::vector<Item> items; // grouped by ascending d
    for (unsigned d = 1; d <= 4; ++d) {
        std::uint64_t trace = 0, power = 1;
        for (unsigned j = 0; j < d; ++j) {
            trace = (trace + power) % Q;
            power = mulmod64(power, twist, Q);
        }
        for (const auto& o : enumerate_orbits(params, d))
            items.push_back({o, mulmod64(o.embedded, trace, Q)});
    }

    std::vector<std::pair<std::size_t, unsigned>> chosen; // (item, multiplicity)
    ClassDatum datum;

    std::function<void(std::size_t)> expand_partitions = [&](std::size_t idx) {
        if (idx == chosen.size()) {
            visit(datum);
            return;
        }
        for (const auto& part : partitions_of(chosen[idx].second)) {
            datum.entries[idx].partition = part;
            expand_partitions(idx + 1);
        }
    };

    std::function<void(std::size_t, unsigned, std::uint64_t)> choose =
        [&](std::size_t start, unsigned budget, std::uint64_t det) {
            if (budget == 0) {
                if (det != 0)
                    return;
                datum.entries.clear();
                for (const auto& [i, mult] : chosen)
                    datum.entries.push_back({items[i].orbit, {}});
                expand_partitions(0);
                return;
            }
            for (std::size_t i = start; i < items.size(); ++i) {
                const unsigned d = items[i].orbit.d;
                if (d > budget)
                    break;
                for (unsigned mult = 1; d * mult <= budget; ++mult) {
                    chosen.emplace_back(i, mult);
                    const std::uint64_t contrib = mulmod64(items[i].norm, mult, Q);
                    choose(i + 1, budget - d * mult, (det + contrib) % Q);
                    chosen.pop_back();
                }
            }
        };
    choose(0, 4, 0);
}

BigInt element_order(const GroupParams& params, const ClassDatum& datum, GroupKind group)
{
    const std::uint64_t Q = ambient_modulus(params);
    const std::uint64_t twist = twist_mod(params, Q);
    const std::uint64_t unipotent = unipotent_order(datum, params.p);

    std::vector<std::uint64_t> eig;
    for (const auto& entry : datum.entries) {
        std::uint64_t x = entry.orbit.embedded;
        for (unsigned j = 0; j < entry.orbit.d; ++j) {
            eig.push_back(x);
            x = mulmod64(x, twist, Q);
        }
    }
    if (eig.empty())
        throw SpectrumError("empty class datum");

    if (group == GroupKind::SL) {
        std::uint64_t ss = 1;
        for (std::uint64_t x : eig)
            ss = lcm64(ss, Q / gcd64(Q, x));
        return BigInt{ss} * unipotent;
    }

    // Least k making all eigenvalues equal, then the least multiple of it making
    // the common value a (q - ε1)-th root of unity.
    std::uint64_t k_pairs = 1;
    for (std::size_t u = 1; u < eig.size(); ++u) {
        const std::uint64_t diff = (eig[u] + Q - eig[0]) % Q;
        k_pairs = lcm64(k_pairs, Q / gcd64(Q, diff));
    }
    const std::uint64_t T = Q / to_u64(params.q_minus_eps, "q - eps");
    const std::uint64_t base = mulmod64(eig[0] % T, k_pairs % T, T);
    const std::uint64_t k_ss = k_pairs * (T / gcd64(T, base));
    return BigInt{lcm64(k_ss, unipotent)};
}

SpectrumTable omega(const GroupParams& params, GroupKind group, std::uint64_t q_bound)
{
    std::set<BigInt> orders;
    for_each_class(
        params, [&](const ClassDatum& datum) { orders.insert(element_order(params, datum, group)); },
        q_bound);
    return {params, group, {orders.begin(), orders.end()}};
}

bool member(const SpectrumTable& table, const BigInt& x)
{
    if (x < 1)
        return false;
    return std::any_of(table.orders.begin(), table.orders.end(),
                       [&](const BigInt& o) { return o % x == 0; });
}

std::string format_dump(const SpectrumTable& table)
{
    std::ostringstream out;
    out << "# epsilon=" << sign_char(table.params.epsilon) << " q=" << table.params.q
        << " group=" << to_string(table.group) << '\n';
    for (const auto& o : table.orders)
        out << o << '\n';
    return out.str();
}

SpectrumTable parse_dump(const std::string& text)
{
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw SpectrumError("spectrum dump: missing header");
    const std::string eps_key = "# epsilon=";
    if (header.rfind(eps_key, 0) != 0 || header.size() < eps_key.size() + 1)
        throw SpectrumError("spectrum dump: malformed header '" + header + "'");
    const auto eps = parse_sign(header.substr(eps_key.size(), 1));
    const std::string rest = header.substr(eps_key.size() + 1);
    const std::size_t gpos = rest.find(" group=");
    if (!eps || rest.rfind(" q=", 0) != 0 || gpos == std::string::npos)
        throw SpectrumError("spectrum dump: malformed header '" + header + "'");
    const auto group = parse_group_kind(rest.substr(gpos + 7));
    if (!group)
        throw SpectrumError("spectrum dump: unknown group in header");

    SpectrumTable table;
    try {
        table.params = derive_from_q(*eps, parse_decimal(rest.substr(3, gpos - 3)));
    } catch (const std::invalid_argument& e) {
        throw SpectrumError(std::string("spectrum dump: ") + e.what());
    }
    table.group = *group;

    if (!text.empty() && text.back() != '\n')
        throw SpectrumError("spectrum dump: missing final newline");
    std::string line;
    while (std::getline(in, line)) {
        BigInt v;
        try {
            v = parse_decimal(line);
        } catch (const ArithError&) {
            throw SpectrumError("spectrum dump: bad order line '" + line + "'");
        }
        if (v < 1 || (!table.orders.empty() && v <= table.orders.back()))
            throw SpectrumError("spectrum dump: orders must be positive and strictly ascending");
        table.orders.push_back(std::move(v));
    }
    return table;
}

} // namespace l4cov
