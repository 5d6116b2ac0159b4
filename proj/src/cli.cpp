#include "l4cov/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "l4cov/document.hpp"
#include "l4cov/spectrum.hpp"
#include "l4cov/verifier.hpp"

namespace l4cov::cli {

namespace {

constexpr unsigned kSweepMaxM = 6;

/// Raised for invalid flag values after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Sign sign_flag(const std::string& text)
{
    const auto s = parse_sign(text);
    if (!s)
        throw UsageError("epsilon must be '+' or '-', got '" + text + "'");
    return *s;
}

Profile profile_flag(const std::string& text)
{
    Profile p;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.size() != 1 || item[0] < '0' || item[0] > '3')
            throw UsageError("profile entries must be 0..3, got '" + item + "'");
        p.ks.push_back(item[0] - '0');
    }
    if (p.ks.empty())
        throw UsageError("profile must not be empty");
    return p;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw UsageError("cannot write '" + path + "'");
    file << content;
}

int cmd_construct(const std::string& eps_text, std::uint32_t p, std::uint32_t m,
                  const std::string& profile_text, const std::string& out_path, std::ostream& out)
{
    const Sign eps = sign_flag(eps_text);
    const Profile profile = profile_flag(profile_text);
    GroupParams params;
    try {
        params = derive(eps, p, m);
    } catch (const ParamError& e) {
        throw UsageError(e.what());
    }
    if (profile.ks.size() != m)
        throw UsageError("profile has " + std::to_string(profile.ks.size()) + " entries, expected m = " +
                         std::to_string(m));
    const WitnessCertificate cert = construct(params, profile);
    write_output(out_path, to_document(cert), out);
    return kOk;
}

int cmd_verify(const std::string& cert_path, const std::string& spectrum_arg, bool lenient,
               std::ostream& out)
{
    WitnessCertificate cert;
    try {
        cert = from_document(read_file(cert_path));
        check_well_formed(cert);
    } catch (const DocumentError& e) {
        throw UsageError(e.what());
    } catch (const MalformedCertificate& e) {
        throw UsageError(e.what());
    }

    std::optional<SpectrumTable> table;
    if (spectrum_arg == "compute") {
        try {
            table = omega(cert.params, GroupKind::PSL);
        } catch (const SpectrumError& e) {
            throw UsageError(e.what());
        }
    } else if (!spectrum_arg.empty()) {
        try {
            table = parse_dump(read_file(spectrum_arg));
        } catch (const SpectrumError& e) {
            throw UsageError(e.what());
        }
    }

    VerifyOptions opts;
    opts.strict_distinct_values = !lenient;
    opts.spectrum = table ? &*table : nullptr;
    const VerificationReport report = verify(cert, opts);
    for (const auto& c : report.checks)
        out << c.id << ' ' << (c.passed ? "PASS" : "FAIL") << "  " << c.detail << '\n';
    out << "overall " << (report.overall ? "PASS" : "FAIL") << '\n';
    return report.overall ? kOk : kFailure;
}

int cmd_sweep(std::uint32_t p_max, unsigned m_max, const std::string& eps_text, std::ostream& out,
              std::ostream& err)
{
    std::vector<Sign> signs;
    if (eps_text == "both")
        signs = {Sign::Plus, Sign::Minus};
    else
        signs = {sign_flag(eps_text)};

    std::vector<std::uint32_t> primes;
    for (std::uint32_t p = 3; p <= p_max; p += 2) {
        if (is_prime(p))
            primes.push_back(p);
    }
    if (primes.empty())
        throw UsageError("no odd primes <= " + std::to_string(p_max));
    if (m_max < 1 || m_max > kSweepMaxM)
        throw UsageError("m-max must lie in 1.." + std::to_string(kSweepMaxM));
    if (ipow(BigInt{primes.back()}, m_max) > kMaxQ)
        throw UsageError("p-max^m-max exceeds the supported q bound " + std::to_string(kMaxQ));

    std::map<CaseTag, std::size_t> per_case;
    std::size_t total = 0, failures = 0;
    for (auto p : primes)
        for (unsigned m = 1; m <= m_max; ++m)
            for (Sign eps : signs) {
                const GroupParams params = derive(eps, p, m);
                for (const auto& profile : all_profiles(m)) {
                    ++total;
                    std::string problem;
                    try {
                        const auto cert = construct(params, profile);
                        const auto report = verify(from_document(to_document(cert)));
                        ++per_case[cert.case_tag];
                        for (const auto& c : report.checks)
                            if (!c.passed)
                                problem += " " + c.id + ": " + c.detail + ";";
                    } catch (const std::exception& e) {
                        problem = std::string(" exception: ") + e.what();
                    }
                    if (!problem.empty()) {
                        ++failures;
                        err << "FAIL eps=" << sign_char(eps) << " p=" << p << " m=" << m << " profile=";
                        for (std::size_t i = 0; i < profile.ks.size(); ++i)
                            err << (i ? "," : "") << profile.ks[i];
                        err << problem << '\n';
                    }
                }
            }

    out << "case              count\n";
    for (CaseTag t : {CaseTag::A_R4, CaseTag::B_R3, CaseTag::C_QcongMinusEps, CaseTag::D_QcongEps}) {
        const std::string name(to_string(t));
        out << name << std::string(18 - name.size(), ' ') << per_case[t] << '\n';
    }
    out << "total             " << total << '\n';
    out << "failures          " << failures << '\n';
    return failures == 0 ? kOk : kFailure;
}

int cmd_spectrum(const std::string& eps_text, const std::string& q_text, const std::string& group_text,
                 const std::string& out_path, std::ostream& out)
{
    const Sign eps = sign_flag(eps_text);
    const auto group = parse_group_kind(group_text);
    if (!group)
        throw UsageError("group must be SL or PSL");
    SpectrumTable table;
    try {
        const GroupParams params = derive_from_q(eps, parse_decimal(q_text));
        table = omega(params, *group);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const SpectrumError& e) {
        throw UsageError(e.what());
    }
    write_output(out_path, format_dump(table), out);
    return kOk;
}

int cmd_ppd(const std::string& a_text, unsigned n, const std::string& eps_text, std::ostream& out)
{
    const Sign eps = sign_flag(eps_text);
    BigInt a;
    try {
        a = parse_decimal(a_text);
    } catch (const ArithError& e) {
        throw UsageError(e.what());
    }
    if (a < 2 || n < 2)
        throw UsageError("ppd needs a >= 2 and n >= 2");
    std::optional<BigInt> r;
    try {
        r = primitive_prime_divisor(a, n, eps);
    } catch (const SizeBoundError& e) {
        throw UsageError(e.what());
    }
    out << (r ? r->str() : std::string("none")) << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Witness elements for element orders in covers of PSL_4(q) and PSU_4(q)", "l4cov"};
    app.require_subcommand(1);

    std::string eps_text, profile_text, out_path, cert_path, spectrum_arg, q_text, group_text = "PSL";
    std::string a_text, sweep_eps = "both";
    std::uint32_t p = 0, m = 0, p_max = 0, m_max = 0;
    unsigned n = 0;
    bool lenient = false;

    auto* construct_cmd = app.add_subcommand("construct", "build and write a witness certificate");
    construct_cmd->add_option("--epsilon", eps_text, "+ (linear) or - (unitary)")->required();
    construct_cmd->add_option("--p", p, "odd prime")->required();
    construct_cmd->add_option("--m", m, "q = p^m")->required();
    construct_cmd->add_option("--profile", profile_text, "comma-separated k_i in 0..3")->required();
    construct_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "check a certificate (V1-V8)");
    verify_cmd->add_option("--cert", cert_path, "certificate file")->required();
    verify_cmd->add_option("--spectrum", spectrum_arg, "spectrum dump file, or 'compute'");
    verify_cmd->add_flag("--lenient", lenient, "report coinciding values as a warning only");

    auto* sweep_cmd = app.add_subcommand("sweep", "construct and verify over a parameter range");
    sweep_cmd->add_option("--p-max", p_max, "largest odd prime")->required();
    sweep_cmd->add_option("--m-max", m_max, "largest exponent m")->required();
    sweep_cmd->add_option("--epsilon", sweep_eps, "both, + or -");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "dump the element-order spectrum");
    spectrum_cmd->add_option("--epsilon", eps_text, "+ or -")->required();
    spectrum_cmd->add_option("--q", q_text, "odd prime power")->required();
    spectrum_cmd->add_option("--group", group_text, "SL or PSL");
    spectrum_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* ppd_cmd = app.add_subcommand("ppd", "smallest primitive prime divisor of a^n - (eps 1)^n");
    ppd_cmd->add_option("--a", a_text, "base >= 2")->required();
    ppd_cmd->add_option("--n", n, "exponent >= 2")->required();
    ppd_cmd->add_option("--epsilon", eps_text, "+ or -")->required();

    std::vector<std::string> argv_store{"l4cov"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*construct_cmd)
            return cmd_construct(eps_text, p, m, profile_text, out_path, out);
        if (*verify_cmd)
            return cmd_verify(cert_path, spectrum_arg, lenient, out);
        if (*sweep_cmd)
            return cmd_sweep(p_max, m_max, sweep_eps, out, err);
        if (*spectrum_cmd)
            return cmd_spectrum(eps_text, q_text, group_text, out_path, out);
        if (*ppd_cmd)
            return cmd_ppd(a_text, n, eps_text, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal failure: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

} // namespace l4cov::cli
