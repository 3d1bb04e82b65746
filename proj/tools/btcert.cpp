// btcert: certificates for explicit Brun-Titchmarsh constants.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <btcert/bounds.hpp>
#include <btcert/certificate.hpp>
#include <btcert/constants.hpp>
#include <btcert/legendre.hpp>
#include <btcert/mertens.hpp>
#include <btcert/prime_count.hpp>
#include <btcert/primes.hpp>
#include <btcert/table_checks.hpp>
#include <btcert/tables.hpp>

using namespace btcert;

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailed = 3;
constexpr int kExitInconclusive = 4;

struct Globals {
    unsigned jobs = 1;
    int precision = 80;
    bool long_running = false;
    bool progress = false;
    std::uint64_t seed = kDefaultSeed;
    std::string data_dir;
    std::string format = "json";
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json interval_json(const IntervalReal& x) { return Json::array({x.lower_str(20), x.upper_str(20)}); }

Rational parse_number(const std::string& text, const char* what) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
}

std::uint64_t parse_integer(const std::string& text, const char* what) {
    Rational q = parse_number(text, what);
    if (q.denominator() != 1 || q.sign() < 0) throw UsageError(std::string(what) + " must be a nonnegative integer");
    return to_u64(q.numerator());
}

class Session {
public:
    explicit Session(const Globals& g) : g_(g) {
        set_working_precision(g.precision);
        scan_.jobs = g.jobs;
        if (g.progress) scan_.progress = [](std::string_view line) { std::cerr << line << '\n'; };
    }

    const TableSet& tables() {
        if (!tables_) tables_ = load_tables(g_.data_dir.empty() ? default_data_dir() : std::filesystem::path(g_.data_dir));
        return *tables_;
    }

    const ExtremalTable& extremal() {
        if (!extremal_) extremal_.emplace(tables().extremal, g_.long_running ? 10 : 8, scan_);
        return *extremal_;
    }

    const ScanOptions& scan() const { return scan_; }
    const Globals& globals() const { return g_; }

    Rational xi_for(std::uint64_t k, const std::string& override_text) {
        if (!override_text.empty()) return parse_number(override_text, "xi");
        auto row = tables().xi_for(k);
        if (!row) throw UsageError("no tabulated xi for k = " + std::to_string(k) + "; pass --xi");
        return row->xi;
    }

    int emit(const VerificationReport& report, std::optional<std::uint64_t> seed = {}) {
        auto doc = CertificateDocument::from_report(report, seed);
        std::string text = g_.format == "csv" ? doc.to_csv() : doc.dump_json();
        if (g_.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(g_.out, std::ios::binary);
            if (!file) throw UsageError("cannot write " + g_.out);
            file << text;
        }
        switch (doc.status) {
        case Status::verified: return kExitVerified;
        case Status::failed: return kExitFailed;
        case Status::inconclusive: return kExitInconclusive;
        }
        return kExitFailed;
    }

private:
    Globals g_;
    ScanOptions scan_;
    std::optional<TableSet> tables_;
    std::optional<ExtremalTable> extremal_;
};

VerificationReport cmd_constants(std::uint64_t k) {
    if (k == 0) throw UsageError("k must be positive");
    VerificationReport report("constants");
    report.parameters = {{"k", k}};
    auto m = mertens_expansion(k);
    Json q = Json::array();
    for (unsigned r = 1; r <= 10; ++r) {
        BigInt wheel = coprime_part(r, k);
        q.push_back({{"r", r}, {"Q", to_string(wheel)}, {"omega", omega(wheel)}});
    }
    report.witnesses.push_back({{"eta", interval_json(m.eta)},
                                {"c_k", interval_json(m.c_alterman)},
                                {"c_used", interval_json(remainder_constant(k))},
                                {"delta_k", m.delta_k.str()},
                                {"phi_k_over_k", m.density_coeff.str()},
                                {"prime_divisors", prime_divisors(k)},
                                {"wheels", q}});
    return report;
}

VerificationReport cmd_bound(std::uint64_t k, const Rational& y, const Rational& xi) {
    if (k == 0) throw UsageError("k must be positive");
    if (!(Rational(static_cast<unsigned long long>(k)) < y)) throw UsageError("y must exceed k");
    VerificationReport report("bound");
    report.parameters = {{"k", k}, {"y", y.str()}, {"xi", xi.str()}};
    Json w = {{"simple_bound", interval_json(simple_bound(k, y, xi))}};
    if (auto t = thm11_bound(k, y))
        w["thm11_bound"] = interval_json(*t);
    else
        w["thm11_bound"] = "not applicable";
    report.witnesses.push_back(w);
    return report;
}

VerificationReport cmd_pi(const ApWindowQuery& q) {
    VerificationReport report("pi");
    report.parameters = {{"x", q.x}, {"y", q.y}, {"k", q.k}, {"a", q.a}};
    report.witnesses.push_back({{"count", pi_ap(q)}});
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified explicit Brun-Titchmarsh constants"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--jobs", g.jobs, "Worker threads for long scans")->check(CLI::Range(1u, 1024u));
    app.add_option("--precision", g.precision, "Interval mantissa bits")->check(CLI::Range(53, 4096));
    app.add_flag("--long-running", g.long_running, "Enable r in {9,10} scans and t <= 1e8 sweeps");
    app.add_flag("--progress", g.progress, "Progress lines on standard error");
    app.add_option("--seed", g.seed, "Random seed for spot checks");
    app.add_option("--data", g.data_dir, "Directory with table1.csv .. table5.csv");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "Write the certificate to a file");

    std::string k_text, xi_text, y_text, x_text, a_text, t_max_text, r_max_text, trials_text = "1000", eps1_form = "displayed";
    bool trust_table4 = false;

    auto* constants = app.add_subcommand("constants", "eta_k, c_k, phi(k)/k and the wheels Q_{k,r}");
    constants->add_option("--k", k_text)->required();

    auto* table2 = app.add_subcommand("table2", "Verify the remainder windows");
    table2->add_option("--k", k_text);
    table2->add_option("--t-max", t_max_text, "Scan limit (default 1e6, 1e8 with --long-running)");

    auto* table3 = app.add_subcommand("table3", "Recompute the extremal constants A, B");
    table3->add_option("--r-max", r_max_text, "Largest wheel order (default 8, 10 with --long-running)");

    app.add_subcommand("table4", "Recompute (d1, d2) and diff against the shipped rows");

    auto* table5 = app.add_subcommand("table5", "Verify the sieve ranges");
    table5->add_option("--k", k_text);

    auto* theorem = app.add_subcommand("theorem", "End-to-end certificate for (k, xi)");
    theorem->add_option("--k", k_text)->required();
    theorem->add_option("--xi", xi_text, "Defaults to the tabulated xi_k");
    theorem->add_flag("--trust-table4", trust_table4, "Use the shipped d1, d2 in the mid range");
    theorem->add_option("--eps1-form", eps1_form)->check(CLI::IsMember({"displayed", "rederived"}));

    auto* bound = app.add_subcommand("bound", "Evaluate the bounds at (k, y)");
    bound->add_option("--k", k_text)->required();
    bound->add_option("--y", y_text)->required();
    bound->add_option("--xi", xi_text);

    auto* pi = app.add_subcommand("pi", "Exact count of primes = a (mod k) in (x, x+y]");
    pi->add_option("--x", x_text)->required();
    pi->add_option("--y", y_text)->required();
    std::string pi_k_text = "1";
    pi->add_option("--k", pi_k_text, "Modulus (default 1)");
    pi->add_option("--a", a_text, "Residue (default 0)");

    auto* spot = app.add_subcommand("spotcheck", "Random windows against simple_bound");
    spot->add_option("--k", k_text)->required();
    spot->add_option("--trials", trials_text);
    spot->add_option("--xi", xi_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        Session session(g);
        auto k_opt = [&]() -> std::optional<std::uint64_t> {
            if (k_text.empty()) return std::nullopt;
            std::uint64_t k = parse_integer(k_text, "k");
            if (k == 0) throw UsageError("k must be positive");
            return k;
        };
        if (constants->parsed()) return session.emit(cmd_constants(*k_opt()));
        if (table2->parsed()) {
            std::uint64_t t_max = t_max_text.empty() ? (g.long_running ? 100'000'000 : 1'000'000)
                                                     : parse_integer(t_max_text, "t-max");
            return session.emit(verify_table2(session.tables(), t_max, k_opt(), session.scan()));
        }
        if (table3->parsed()) {
            unsigned r_max = r_max_text.empty() ? (g.long_running ? 10u : 8u)
                                                : static_cast<unsigned>(parse_integer(r_max_text, "r-max"));
            return session.emit(verify_table3(session.tables(), r_max, session.scan()));
        }
        if (app.got_subcommand("table4")) return session.emit(verify_table4(session.tables()));
        if (table5->parsed()) return session.emit(verify_table5(session.tables(), session.extremal(), k_opt()));
        if (theorem->parsed()) {
            std::uint64_t k = *k_opt();
            RangeOptions options;
            options.trust_printed_delta = trust_table4;
            options.eps1_form = eps1_form == "rederived" ? Eps1Form::rederived : Eps1Form::displayed;
            options.scan = session.scan();
            TheoremInputs inputs{&session.tables(), &session.extremal(), {}, false};
            return session.emit(verify_theorem(k, session.xi_for(k, xi_text), inputs, options));
        }
        if (bound->parsed()) {
            std::uint64_t k = *k_opt();
            return session.emit(cmd_bound(k, parse_number(y_text, "y"), session.xi_for(k, xi_text)));
        }
        if (pi->parsed()) {
            ApWindowQuery q{parse_integer(x_text, "x"), parse_integer(y_text, "y"), parse_integer(pi_k_text, "k"),
                            a_text.empty() ? 0 : parse_integer(a_text, "a")};
            return session.emit(cmd_pi(q));
        }
        if (spot->parsed()) {
            std::uint64_t k = *k_opt();
            SpotCheckOptions options;
            options.seed = g.seed;
            options.scan = session.scan();
            return session.emit(spot_check(k, session.xi_for(k, xi_text), parse_integer(trials_text, "trials"), options),
                                g.seed);
        }
    } catch (const UsageError& e) {
        std::cerr << "btcert: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "btcert: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "btcert: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "btcert: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "btcert: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
