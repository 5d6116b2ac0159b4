#include "l4cov/document.hpp"

#include <set>

#include <json.hpp>

namespace l4cov {

namespace {

using Json = nlohmann::ordered_json;

Json positions_json(const std::vector<int>& positions)
{
    Json arr = Json::array();
    for (int p : positions)
        arr.push_back(p);
    return arr;
}

void expect_keys(const Json& obj, const std::set<std::string>& required,
                 const std::set<std::string>& optional, const std::string& where)
{
    if (!obj.is_object())
        throw DocumentError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!required.count(key) && !optional.count(key))
            throw DocumentError(where + ": unknown field '" + key + "'");
    }
    for (const auto& key : required) {
        if (!obj.contains(key))
            throw DocumentError(where + ": missing field '" + key + "'");
    }
}

BigInt big_field(const Json& obj, const std::string& key)
{
    const Json& v = obj.at(key);
    if (!v.is_string())
        throw DocumentError("field '" + key + "' must be a decimal string");
    try {
        return parse_decimal(v.get<std::string>());
    } catch (const ArithError& e) {
        throw DocumentError("field '" + key + "': " + e.what());
    }
}

std::int64_t int_field(const Json& v, const std::string& what)
{
    if (!v.is_number_integer())
        throw DocumentError(what + " must be an integer");
    return v.get<std::int64_t>();
}

std::vector<int> positions_field(const Json& v)
{
    if (!v.is_array())
        throw DocumentError("positions must be an array");
    std::vector<int> out;
    for (const auto& p : v) {
        const auto x = int_field(p, "position");
        if (x < 1 || x > 4)
            throw DocumentError("position outside 1..4");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

} // namespace

std::string to_document(const WitnessCertificate& cert)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["params"] = {{"epsilon", std::string(1, sign_char(cert.params.epsilon))},
                     {"p", cert.params.p},
                     {"m", cert.params.m},
                     {"q", to_decimal(cert.params.q)}};
    doc["profile"] = cert.profile.ks;
    doc["case"] = std::string(to_string(cert.case_tag));
    doc["theta_order"] = to_decimal(cert.theta_order);
    Json exps = Json::array();
    for (const auto& e : cert.exponents)
        exps.push_back(to_decimal(e));
    doc["exponents"] = exps;
    Json sels = Json::array();
    for (const auto& s : cert.selections)
        sels.push_back({{"factor", s.factor}, {"positions", positions_json(s.positions)}});
    doc["selections"] = sels;
    doc["claimed_order"] = to_decimal(cert.claimed_order);
    doc["target_order"] = to_decimal(cert.target_order);
    if (cert.case_d) {
        const auto& d = *cert.case_d;
        Json adj = Json::array();
        for (const auto& a : d.adjustments)
            adj.push_back({{"kind", std::string(to_string(a.kind))},
                           {"factor", a.factor},
                           {"from", positions_json(a.from)},
                           {"to", positions_json(a.to)}});
        doc["case_d"] = {{"r", to_decimal(d.r)}, {"t", to_decimal(d.t)}, {"a", to_decimal(d.a)},
                         {"b", to_decimal(d.b)}, {"A", to_decimal(d.A)}, {"B", to_decimal(d.B)},
                         {"adjustments", adj}};
    }
    return doc.dump(2) + "\n";
}

WitnessCertificate from_document(const std::string& text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DocumentError(std::string("not valid JSON: ") + e.what());
    }

    try {
        expect_keys(doc,
                    {"schema_version", "params", "profile", "case", "theta_order", "exponents",
                     "selections", "claimed_order", "target_order"},
                    {"case_d"}, "certificate");
        if (int_field(doc.at("schema_version"), "schema_version") != kSchemaVersion)
            throw DocumentError("unsupported schema_version");

        const Json& pj = doc.at("params");
        expect_keys(pj, {"epsilon", "p", "m", "q"}, {}, "params");
        if (!pj.at("epsilon").is_string())
            throw DocumentError("params.epsilon must be a string");
        const auto eps = parse_sign(pj.at("epsilon").get<std::string>());
        if (!eps)
            throw DocumentError("params.epsilon must be '+' or '-'");
        const auto p = int_field(pj.at("p"), "params.p");
        const auto m = int_field(pj.at("m"), "params.m");
        if (p < 0 || p > std::numeric_limits<std::uint32_t>::max() || m < 0 || m > 64)
            throw DocumentError("params.p or params.m out of range");

        WitnessCertificate cert;
        try {
            cert.params = derive(*eps, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
        } catch (const ParamError& e) {
            throw DocumentError(std::string("params: ") + e.what());
        }
        if (big_field(pj, "q") != cert.params.q)
            throw DocumentError("params.q is not p^m");

        if (!doc.at("profile").is_array())
            throw DocumentError("profile must be an array");
        for (const auto& k : doc.at("profile"))
            cert.profile.ks.push_back(static_cast<int>(int_field(k, "profile entry")));

        if (!doc.at("case").is_string())
            throw DocumentError("case must be a string");
        const auto tag = parse_case_tag(doc.at("case").get<std::string>());
        if (!tag)
            throw DocumentError("unknown case tag");
        cert.case_tag = *tag;

        cert.theta_order = big_field(doc, "theta_order");
        const Json& exps = doc.at("exponents");
        if (!exps.is_array() || exps.size() != 4)
            throw DocumentError("exponents must be an array of four decimal strings");
        for (std::size_t j = 0; j < 4; ++j) {
            if (!exps[j].is_string())
                throw DocumentError("exponents must be decimal strings");
            cert.exponents[j] = parse_decimal(exps[j].get<std::string>());
        }

        if (!doc.at("selections").is_array())
            throw DocumentError("selections must be an array");
        for (const auto& s : doc.at("selections")) {
            expect_keys(s, {"factor", "positions"}, {}, "selection");
            const auto f = int_field(s.at("factor"), "selection.factor");
            if (f < 0)
                throw DocumentError("selection.factor must be nonnegative");
            cert.selections.push_back({static_cast<unsigned>(f), positions_field(s.at("positions"))});
        }
        cert.claimed_order = big_field(doc, "claimed_order");
        cert.target_order = big_field(doc, "target_order");

        if (doc.contains("case_d")) {
            const Json& dj = doc.at("case_d");
            expect_keys(dj, {"r", "t", "a", "b", "A", "B", "adjustments"}, {}, "case_d");
            CaseDInternals d;
            d.r = big_field(dj, "r");
            d.t = big_field(dj, "t");
            d.a = big_field(dj, "a");
            d.b = big_field(dj, "b");
            d.A = big_field(dj, "A");
            d.B = big_field(dj, "B");
            if (!dj.at("adjustments").is_array())
                throw DocumentError("case_d.adjustments must be an array");
            for (const auto& a : dj.at("adjustments")) {
                expect_keys(a, {"kind", "factor", "from", "to"}, {}, "adjustment");
                if (!a.at("kind").is_string())
                    throw DocumentError("adjustment.kind must be a string");
                const std::string kind = a.at("kind").get<std::string>();
                Adjustment adj;
                if (kind == to_string(Adjustment::Kind::FlipK13))
                    adj.kind = Adjustment::Kind::FlipK13;
                else if (kind == to_string(Adjustment::Kind::SwapK2))
                    adj.kind = Adjustment::Kind::SwapK2;
                else
                    throw DocumentError("unknown adjustment kind '" + kind + "'");
                const auto f = int_field(a.at("factor"), "adjustment.factor");
                if (f < 0)
                    throw DocumentError("adjustment.factor must be nonnegative");
                adj.factor = static_cast<unsigned>(f);
                adj.from = positions_field(a.at("from"));
                adj.to = positions_field(a.at("to"));
                d.adjustments.push_back(std::move(adj));
            }
            cert.case_d = std::move(d);
        }
        return cert;
    } catch (const Json::exception& e) {
        throw DocumentError(std::string("malformed certificate: ") + e.what());
    } catch (const ArithError& e) {
        throw DocumentError(std::string("malformed number: ") + e.what());
    }
}

} // namespace l4cov
