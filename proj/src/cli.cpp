#include "g46/cli.hpp"

#include "g46/analysis.hpp"
#include "g46/expansion.hpp"
#include "g46/faber.hpp"
#include "g46/io.hpp"
#include "g46/newton.hpp"
#include "g46/qseries.hpp"
#include "g46/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace g46 {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void require_weight(int k, const char* flag) {
    if (k < 4 || k % 2 != 0)
        throw UsageError(std::string(flag) + " must be an even integer >= 4 (got " + std::to_string(k) + ")");
}

class Session {
public:
    Session(const RunConfig& config, std::ostream& out, std::ostream& err)
        : config_(config), out_(out), err_(err), cache_path_(resolve_cache_path(config.cache_path)),
          started_(std::chrono::steady_clock::now()) {}

    int run() {
        load_cache();
        int code = kExitUsage;
        switch (config_.command) {
            case Command::expand: code = expand(); break;
            case Command::scan: code = scan(); break;
            case Command::witness: code = witness(); break;
            case Command::faber: code = faber(); break;
            case Command::irreducible: code = irreducible(); break;
        }
        save_cache();
        return code;
    }

private:
    OutputFormat format_or(OutputFormat fallback) const { return config_.format.value_or(fallback); }

    long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started_).count();
    }

    void emit(json report) {
        report["timing_ms"] = elapsed_ms();
        out_ << report.dump(2) << '\n';
    }

    void load_cache() {
        if (!cache_path_) return;
        for (auto& e : load_cache_file(*cache_path_)) engine_.seed(std::move(e));
        loaded_count_ = engine_.cached_count();
    }

    void save_cache() {
        if (!cache_path_ || engine_.cached_count() == loaded_count_) return;
        save_cache_file(*cache_path_, engine_.cached());
        loaded_count_ = engine_.cached_count();
    }

    int expand() {
        require_weight(config_.weight, "--weight");
        Method method;
        try {
            method = parse_method(config_.method);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
        if (!method_applies(method, config_.weight))
            throw UsageError("method " + config_.method + " does not apply to weight " + std::to_string(config_.weight));
        const auto e = engine_.expand(config_.weight, method);
        std::optional<ExpansionCheck> check;
        if (config_.verify) check = verify_expansion(*e);

        switch (format_or(OutputFormat::csv)) {
            case OutputFormat::csv:
                out_ << "a,b,w,v2\n";
                for (int b : e->bs())
                    out_ << e->a_of(b) << ',' << b << ',' << to_string(e->at(b)) << ',' << v2(e->at(b)).to_string() << '\n';
                break;
            case OutputFormat::text:
                out_ << "G_" << e->weight() << " via " << to_string(e->provenance()) << '\n';
                for (int b : e->bs())
                    out_ << "  a=" << e->a_of(b) << " b=" << b << " w=" << to_string(e->at(b))
                         << " v2=" << v2(e->at(b)).to_string() << '\n';
                if (check) out_ << "q-series check through q^" << check->order << ": " << (check->ok ? "ok" : "FAILED") << '\n';
                break;
            case OutputFormat::json: {
                json report = make_report("expand", {{"weight", config_.weight}, {"method", config_.method}});
                report["results"].push_back(to_json(*e));
                if (check) {
                    report["results"].push_back(to_json(*check));
                    if (!check->ok) report["failures"].push_back(to_json(*check));
                }
                emit(std::move(report));
                break;
            }
        }
        if (check && !check->ok) {
            err_ << "q-series check failed for weight " << check->weight << " at q^" << check->first_mismatch.value_or(-1)
                 << '\n';
            return kExitCheckFailed;
        }
        return kExitOk;
    }

    ScanSummary run_scan(int k_max, const ScanChecks& checks) {
        auto progress = [this](int k, int done) {
            err_ << "progress: k=" << k << " (" << done << " weights)\n";
            err_.flush();
            save_cache();
        };
        return scan_range(engine_, k_max, checks, config_.jobs, progress, config_.progress_every);
    }

    int report_scan(const std::string& command, const ScanSummary& summary, bool full_results) {
        switch (format_or(OutputFormat::json)) {
            case OutputFormat::json: {
                json report = make_report(command, {{"k_max", summary.k_max}, {"checks", to_string(summary.checks)}, {"jobs", config_.jobs}});
                for (const auto& r : summary.reports)
                    if (full_results || r.witness_status != WitnessStatus::not_applicable) report["results"].push_back(to_json(r));
                for (const auto& f : summary.failures) report["failures"].push_back(to_json(f));
                emit(std::move(report));
                break;
            }
            case OutputFormat::csv:
                out_ << "k,s,v2_k,lambda,mu,min_v2,argmin_bs,witness\n";
                for (const auto& r : summary.reports) {
                    out_ << r.profile.k << ',' << r.profile.s_k << ',' << r.profile.v2_k << ',' << r.profile.lambda_k << ','
                         << r.profile.mu_k << ',' << r.min_v2 << ',';
                    for (std::size_t i = 0; i < r.argmin_bs.size(); ++i) out_ << (i ? ";" : "") << r.argmin_bs[i];
                    out_ << ',' << to_string(r.witness_status) << '\n';
                }
                break;
            case OutputFormat::text:
                out_ << command << ": " << summary.weights_checked << " weights, checks " << to_string(summary.checks)
                     << ", " << summary.failures.size() << " failures\n";
                for (const auto& f : summary.failures) out_ << "  FAIL k=" << f.k << " [" << f.check << "] " << f.detail << '\n';
                break;
        }
        if (!summary.failures.empty()) {
            err_ << summary.failures.size() << " failure(s); counterexample weights:";
            for (const auto& f : summary.failures) err_ << ' ' << f.k;
            err_ << '\n';
            return kExitCheckFailed;
        }
        return kExitOk;
    }

    int scan() {
        require_weight(config_.k_max, "--max");
        ScanChecks checks;
        try {
            checks = parse_checks(config_.checks);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
        return report_scan("scan", run_scan(config_.k_max, checks), true);
    }

    int witness() {
        if (config_.weight != 0 && config_.k_max != 0) throw UsageError("give either --weight or --max, not both");
        if (config_.k_max != 0) {
            require_weight(config_.k_max, "--max");
            return report_scan("witness", run_scan(config_.k_max, ScanChecks{false, true, false}), false);
        }
        require_weight(config_.weight, "--weight");
        if (is_power_of_two(static_cast<std::uint64_t>(config_.weight)))
            throw UsageError("witness check does not apply to powers of 2 (k=" + std::to_string(config_.weight) + ")");
        const auto e = engine_.expand(config_.weight);
        const WeightReport r = weight_report(*e);
        const bool pass = r.witness_status == WitnessStatus::case_a_pass || r.witness_status == WitnessStatus::case_b_pass;
        if (format_or(OutputFormat::text) == OutputFormat::json) {
            json report = make_report("witness", {{"weight", config_.weight}});
            report["results"].push_back(to_json(r));
            if (!pass) report["failures"].push_back({{"k", config_.weight}, {"check", "witness"}});
            emit(std::move(report));
        } else {
            out_ << "k=" << config_.weight << " lambda=" << r.profile.lambda_k << " mu=" << r.profile.mu_k
                 << " status=" << to_string(r.witness_status) << '\n';
            for (const auto& [b, v] : r.details) out_ << "  b=" << b << " v2=" << v.to_string() << '\n';
        }
        return pass ? kExitOk : kExitCheckFailed;
    }

    FaberPolynomial build_polynomial() {
        if (config_.form == "ek") {
            require_weight(config_.weight, "--weight");
            return faber_.eisenstein(config_.weight);
        }
        if (config_.form == "sq2k") {
            require_weight(config_.weight, "--weight");
            if (config_.weight % 12 != 0) throw UsageError("--form sq2k needs a weight divisible by 12");
            return faber_.square_combo(config_.weight);
        }
        if (config_.form == "combo") {
            if (!config_.combo_file) throw UsageError("--form combo needs --combo-file");
            std::ifstream is(*config_.combo_file);
            if (!is) throw FormatError("cannot open combo file " + config_.combo_file->string());
            const ComboSpec spec = parse_combo_spec(is);
            return faber_.combo(spec, config_.force);
        }
        throw UsageError("--form must be one of ek, sq2k, combo");
    }

    int faber() {
        FaberPolynomial p;
        try {
            p = build_polynomial();
        } catch (const HypothesisViolation& ex) {
            err_ << ex.what() << " (use --force to build anyway)\n";
            return kExitCheckFailed;
        }
        if (config_.out_file) {
            std::ofstream os(*config_.out_file);
            if (!os) throw std::runtime_error("cannot write " + config_.out_file->string());
            write_faberpoly(os, p);
        }
        const auto vals = p.valuations();
        const int d = p.degree();
        const Valuation h = vals.front();
        auto bound = [&](int r) -> std::string {
            if (h.is_infinite() || d == 0) return "-";
            return to_string(make_rat(h.value() * (d - r), d));
        };
        switch (format_or(OutputFormat::text)) {
            case OutputFormat::text:
                if (!config_.out_file) write_faberpoly(out_, p);
                out_ << "# source: " << p.source << ", divisor " << to_string(p.divisor) << '\n';
                out_ << "# r v2(c_r) h(d-r)/d\n";
                for (int r = 0; r <= d; ++r) out_ << "# " << r << ' ' << vals[r].to_string() << ' ' << bound(r) << '\n';
                break;
            case OutputFormat::csv:
                out_ << "r,c,v2,bound\n";
                for (int r = 0; r <= d; ++r)
                    out_ << r << ',' << to_string(p.coeffs[r]) << ',' << vals[r].to_string() << ',' << bound(r) << '\n';
                break;
            case OutputFormat::json: {
                json report = make_report("faber", inputs_json());
                json poly = to_json(p);
                for (int r = 0; r <= d; ++r) poly["coeffs"][r]["bound"] = bound(r);
                report["results"].push_back(std::move(poly));
                emit(std::move(report));
                break;
            }
        }
        return kExitOk;
    }

    int irreducible() {
        FaberPolynomial p;
        if (config_.poly_file) {
            std::ifstream is(*config_.poly_file);
            if (!is) throw FormatError("cannot open polynomial file " + config_.poly_file->string());
            p = read_faberpoly(is);
            if (p.is_zero()) throw FormatError("zero polynomial");
            if (!p.is_monic()) p = normalize_monic(std::move(p));
        } else {
            try {
                p = build_polynomial();
            } catch (const HypothesisViolation& ex) {
                err_ << ex.what() << " (use --force to build anyway)\n";
                return kExitCheckFailed;
            }
        }
        if (p.degree() < 1) throw FormatError("certificate needs degree >= 1");
        const DumasCertificate cert = dumas(p);
        switch (format_or(OutputFormat::text)) {
            case OutputFormat::text: {
                out_ << "verdict: " << to_string(cert.verdict) << '\n';
                out_ << "h: " << (cert.h ? std::to_string(*cert.h) : "inf") << '\n';
                out_ << "d: " << cert.d << '\n';
                out_ << "hull:";
                for (const auto& v : cert.witness.hull) out_ << " (" << v.r << ',' << v.v << ')';
                out_ << '\n' << "reason: " << cert.reason << '\n';
                break;
            }
            case OutputFormat::csv:
                out_ << "verdict,h,d,segments,reason\n"
                     << to_string(cert.verdict) << ',' << (cert.h ? std::to_string(*cert.h) : "inf") << ',' << cert.d << ','
                     << cert.witness.segments.size() << ",\"" << cert.reason << "\"\n";
                break;
            case OutputFormat::json: {
                json report = make_report("irreducible", inputs_json());
                report["results"].push_back(to_json(cert));
                if (cert.verdict != Verdict::irreducible) report["failures"].push_back({{"verdict", "inconclusive"}, {"reason", cert.reason}});
                emit(std::move(report));
                break;
            }
        }
        return cert.verdict == Verdict::irreducible ? kExitOk : kExitCheckFailed;
    }

    json inputs_json() const {
        json in{{"form", config_.form}, {"weight", config_.weight}, {"force", config_.force}};
        if (config_.combo_file) in["combo_file"] = config_.combo_file->string();
        if (config_.poly_file) in["file"] = config_.poly_file->string();
        return in;
    }

    const RunConfig& config_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<std::filesystem::path> cache_path_;
    std::chrono::steady_clock::time_point started_;
    ExpansionEngine engine_;
    FaberBuilder faber_{engine_};
    std::size_t loaded_count_ = 0;
};

}  // namespace

std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::filesystem::path>& flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("G46_CACHE"); env != nullptr && *env != '\0') return std::filesystem::path(env);
    return std::nullopt;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    CLI::App app{"Eisenstein series G_4/G_6 expansions, 2-adic valuation checks, Faber polynomials"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format;
    std::string cache;
    app.add_option("--format", format, "Output format: json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--cache", cache, "Expansion cache file (default: $G46_CACHE)");
    app.add_option("--jobs", config.jobs, "Threads for per-weight checks")->check(CLI::PositiveNumber);

    std::string combo_file, poly_file, out_file;

    auto* expand = app.add_subcommand("expand", "Expand G_k in G_4, G_6");
    expand->add_option("--weight", config.weight, "Even weight k >= 4")->required();
    expand->add_option("--method", config.method, "auto, classical, romik, mr0 or mr4");
    expand->add_flag("--verify", config.verify, "Confirm against q-expansions");

    auto* scan = app.add_subcommand("scan", "Check the valuation statements for all even k <= max");
    scan->add_option("--max", config.k_max, "Largest weight")->required();
    scan->add_option("--check", config.checks, "Comma list of theorem1, witness, powers2 or all");
    scan->add_option("--progress-every", config.progress_every, "Progress/checkpoint interval in weights");

    auto* witness = app.add_subcommand("witness", "Check the witness coefficient levels");
    witness->add_option("--weight", config.weight, "Single weight");
    witness->add_option("--max", config.k_max, "All even weights up to max");

    auto add_form_options = [&](CLI::App* sub) {
        sub->add_option("--form", config.form, "ek, sq2k or combo");
        sub->add_option("--weight", config.weight, "Weight for ek / sq2k");
        sub->add_option("--combo-file", combo_file, "key=value combination spec");
        sub->add_flag("--force", config.force, "Build combinations that violate the hypotheses");
    };
    auto* faber = app.add_subcommand("faber", "Build a Faber polynomial");
    add_form_options(faber);
    faber->add_option("--out", out_file, "Write the FABERPOLY file here");

    auto* irreducible = app.add_subcommand("irreducible", "Dumas certificate for a Faber polynomial");
    add_form_options(irreducible);
    irreducible->add_option("--file", poly_file, "FABERPOLY v1 input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (!format.empty()) config.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;
    if (!cache.empty()) config.cache_path = cache;
    if (!combo_file.empty()) config.combo_file = combo_file;
    if (!poly_file.empty()) config.poly_file = poly_file;
    if (!out_file.empty()) config.out_file = out_file;

    if (expand->parsed()) config.command = Command::expand;
    else if (scan->parsed()) config.command = Command::scan;
    else if (witness->parsed()) config.command = Command::witness;
    else if (faber->parsed()) config.command = Command::faber;
    else config.command = Command::irreducible;

    if (config.command == Command::irreducible && config.poly_file.has_value() == !config.form.empty()) {
        err << "error: irreducible needs exactly one of --file or --form\n";
        return kExitUsage;
    }
    if (config.command == Command::faber && config.form.empty()) {
        err << "error: faber needs --form\n";
        return kExitUsage;
    }

    try {
        Session session(config, out, err);
        return session.run();
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const FormatError& ex) {
        err << "format error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace g46
