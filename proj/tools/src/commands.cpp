#include "gbfam_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gbfam/distributions.hpp"
#include "gbfam/errors.hpp"
#include "gbfam/fit.hpp"
#include "gbfam/rvpipe.hpp"
#include "gbfam/sde.hpp"
#include "json.hpp"

namespace gbfam::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Inline JSON, or @path to read it from a file.
std::string json_arg(const std::string& value) {
    return !value.empty() && value[0] == '@' ? read_file(value.substr(1)) : value;
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw DomainError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw DomainError("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

std::vector<double> parse_points(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        const auto b = token.find_first_not_of(" \t");
        if (b == std::string::npos) throw DomainError("empty entry in point list");
        try {
            std::size_t used = 0;
            const double v = std::stod(token.substr(b), &used);
            if (token.find_first_not_of(" \t", b + used) != std::string::npos) throw std::invalid_argument("");
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw DomainError("cannot parse point '" + token + "'");
        }
    }
    if (out.empty()) throw DomainError("no points given");
    return out;
}

std::vector<double> read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open samples file '" + path + "'");
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(std::stod(line));
        } catch (const std::logic_error&) {
            throw DomainError("samples file line " + std::to_string(lineno) + " is not a number");
        }
    }
    return out;
}

std::string column_text(const std::vector<double>& v) {
    std::string s;
    for (double x : v) {
        s += fmt(x);
        s += '\n';
    }
    return s;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::string field_or_na(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
    std::string spec;
    std::string quantity = "pdf";
    std::string points;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    const Distribution d(dist_spec_from_json(json_arg(a.spec)));
    const auto pts = parse_points(a.points);
    std::ostringstream os;
    os << "x\t" << a.quantity << '\n';
    for (double x : pts) {
        double v = 0.0;
        if (a.quantity == "pdf") v = d.pdf(x);
        else if (a.quantity == "cdf") v = d.cdf(x);
        else if (a.quantity == "ccdf") v = d.ccdf(x);
        else v = d.quantile(x);
        os << fmt(x) << '\t' << fmt(v) << '\n';
    }
    out << os.str();
    return kExitOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string sde;
    std::optional<double> dt, burn_in, thin;
    std::size_t paths = 100;
    std::size_t samples_per_path = 1000;
    std::uint64_t seed = 0;
    std::string boundary = "reflect";
    double alpha_level = 0.05;
    std::string out_dir;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const SdeSpec spec = sde_spec_from_json(json_arg(a.sde));
    for (const auto& name : ignored_fields(spec)) err << "note: field '" << name << "' is ignored by this model\n";
    IntegrationConfig cfg;
    cfg.dt = a.dt;
    cfg.burn_in = a.burn_in;
    cfg.thin = a.thin;
    cfg.paths = a.paths;
    cfg.samples_per_path = a.samples_per_path;
    cfg.seed = a.seed;
    cfg.boundary = a.boundary == "clamp" ? BoundaryPolicy::Clamp : BoundaryPolicy::Reflect;

    const Ensemble ens = integrate(spec, cfg);
    if (!a.out_dir.empty()) {
        const fs::path dir = prepare_out_dir(a.out_dir);
        write_atomic(dir / "ensemble.txt", column_text(ens.samples));
        write_atomic(dir / "ensemble.json", ensemble_sidecar_json(ens));
    }

    std::optional<DistSpec> target;
    try {
        target = param_map(spec);
    } catch (const DomainError&) {
    }
    if (!target) {
        double lo = ens.samples.front(), hi = lo;
        for (double x : ens.samples) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        out << "deterministic: samples in [" << fmt(lo) << ", " << fmt(hi) << "], n=" << ens.effective_count
            << '\n';
        return kExitOk;
    }
    const double ks = ks_statistic(ens.samples, *target);
    const double thr = ks_threshold(std::max<std::size_t>(ens.effective_count, 35), a.alpha_level);
    out << "target=" << to_json(*target) << '\n';
    out << "ks=" << fmt(ks) << ", threshold=" << fmt(thr) << ", " << (ks < thr ? "pass" : "fail")
        << ", n=" << ens.effective_count << '\n';
    return kExitOk;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
    std::string samples;
    std::string family;
    std::string method = "mle";
    std::string init;
    std::size_t bootstrap = 0;
    std::uint64_t seed = 0;
    double alpha_level = 0.05;
    double level = 0.95;
    std::string out_dir;
};

FitResult do_fit(const std::vector<double>& x, Family fam, const std::string& method,
                 const std::optional<DistSpec>& init, double alpha_level) {
    FitOptions opt;
    opt.ks_alpha_level = alpha_level;
    return method == "cdf" ? fit_cdf_lsq(x, fam, init, opt) : fit_mle(x, fam, init, opt);
}

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
    const auto x = read_samples(a.samples);
    const Family fam = family_from_string(a.family);
    std::optional<DistSpec> init;
    if (!a.init.empty()) init = dist_spec_from_json(json_arg(a.init));
    const FitResult r = do_fit(x, fam, a.method, init, a.alpha_level);
    if (!r.converged) err << "warning: fit did not converge after " << r.iterations << " iterations\n";
    const std::string js = to_json(r);
    out << js << '\n';
    if (!a.out_dir.empty()) {
        const fs::path dir = prepare_out_dir(a.out_dir);
        write_atomic(dir / "fit.json", js + "\n");
        if (a.bootstrap > 0) {
            const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
            const CiBand band = bootstrap_ci(r.spec, x.size(), a.bootstrap, a.level, log_grid(*lo, *hi, 50), a.seed);
            write_atomic(dir / "band.tsv", to_tsv(band));
        }
    } else if (a.bootstrap > 0) {
        throw DomainError("--bootstrap needs --out");
    }
    return kExitOk;
}

// ---- rv-report ------------------------------------------------------------

struct RvArgs {
    std::string prices;
    std::vector<std::size_t> windows;
    std::vector<std::string> families{"GB", "mGB"};
    std::size_t stride = 1;
    std::size_t bootstrap = 0;
    std::uint64_t seed = 0;
    double alpha_level = 0.05;
    std::string out_dir;
};

int cmd_rv_report(const RvArgs& a, std::ostream& out, std::ostream& err) {
    if (a.windows.empty()) throw DomainError("--n needs at least one window length");
    if (a.families.empty()) throw DomainError("--families needs at least one family");
    std::vector<Family> fams;
    for (const auto& f : a.families) fams.push_back(family_from_string(f));

    const std::string raw = read_file(a.prices);
    std::istringstream in(raw);
    const PriceSeries series = read_price_csv(in);
    const std::string digest = sha256_hex(raw);
    RvConfig rc;
    rc.stride = a.stride;
    const auto datasets = build_all(series, a.windows, rc);
    const fs::path dir = prepare_out_dir(a.out_dir);

    std::vector<std::string> summaries(fams.size(), "n\talpha\tbeta1\tbeta2\tp\tq\tks\tks_table\n");
    for (const auto& ds : datasets) {
        const std::string tag = "n" + std::to_string(ds.n);
        write_atomic(dir / ("rv_" + tag + ".txt"), column_text(ds.values));
        write_atomic(dir / ("rv_" + tag + ".json"), rv_sidecar_json(ds, digest) + "\n");
        const auto ecdf = empirical_ccdf(ds);
        {
            std::string t = "x\tccdf\n";
            for (const auto& pt : ecdf) t += fmt(pt.x) + '\t' + fmt(pt.ccdf) + '\n';
            write_atomic(dir / ("ecdf_" + tag + ".tsv"), t);
        }
        const auto x = positive_values(ds);
        if (ds.zero_count > 0) err << tag << ": " << ds.zero_count << " zero RV values excluded from fitting\n";

        for (std::size_t k = 0; k < fams.size(); ++k) {
            const std::string name(to_string(fams[k]));
            try {
                const FitResult r = do_fit(x, fams[k], "mle", std::nullopt, a.alpha_level);
                if (!r.converged) err << tag << " " << name << ": fit did not converge\n";
                write_atomic(dir / ("fit_" + name + "_" + tag + ".json"), to_json(r) + "\n");
                const Distribution d(r.spec);
                std::string t = "x\tempirical\tfitted\n";
                for (const auto& pt : ecdf) {
                    if (pt.x > 0.0) t += fmt(pt.x) + '\t' + fmt(pt.ccdf) + '\t' + fmt(d.ccdf(pt.x)) + '\n';
                }
                write_atomic(dir / ("ccdf_" + name + "_" + tag + ".tsv"), t);
                if (a.bootstrap > 0) {
                    const CiBand band = bootstrap_ci(r.spec, x.size(), a.bootstrap, 0.95,
                                                     log_grid(x.empty() ? 1.0 : *std::min_element(x.begin(), x.end()),
                                                              *std::max_element(x.begin(), x.end()), 50),
                                                     a.seed + ds.n);
                    write_atomic(dir / ("band_" + name + "_" + tag + ".tsv"), to_tsv(band));
                }
                const auto fl = r.spec.fields();
                summaries[k] += std::to_string(ds.n) + '\t' + field_or_na(fl.alpha) + '\t' + field_or_na(fl.beta1) +
                                '\t' + field_or_na(fl.beta2) + '\t' + field_or_na(fl.p) + '\t' + field_or_na(fl.q) +
                                '\t' + fmt(r.ks) + '\t' + fmt(r.ks_threshold) + '\n';
                out << tag << '\t' << name << "\tks=" << fmt(r.ks) << "\tks_table=" << fmt(r.ks_threshold)
                    << (r.converged ? "" : "\tnot-converged") << '\n';
            } catch (const std::exception& e) {
                err << tag << " " << name << ": fit failed: " << e.what() << '\n';
                summaries[k] += std::to_string(ds.n) + "\tNA\tNA\tNA\tNA\tNA\tNA\tNA\n";
            }
        }
    }
    for (std::size_t k = 0; k < fams.size(); ++k) {
        write_atomic(dir / ("summary_" + std::string(to_string(fams[k])) + ".tsv"), summaries[k]);
    }
    nlohmann::json meta;
    meta["seed"] = a.seed;
    meta["version"] = GBFAM_VERSION;
    meta["source_digest"] = digest;
    meta["windows"] = a.windows;
    meta["stride"] = a.stride;
    meta["families"] = a.families;
    write_atomic(dir / "metadata.json", meta.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized beta family toolkit", "gbfam"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate pdf/cdf/ccdf/quantile of a family member");
    eval->add_option("--spec", ev.spec, "Member as JSON, or @file")->required();
    eval->add_option("--quantity", ev.quantity, "pdf, cdf, ccdf or quantile")
        ->check(CLI::IsMember({"pdf", "cdf", "ccdf", "quantile"}));
    eval->add_option("--points", ev.points, "Comma-separated points")->required();

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Euler-Maruyama ensemble and KS against the steady state");
    simulate->add_option("--sde", sim.sde, "SDE spec as JSON, or @file")->required();
    simulate->add_option("--dt", sim.dt, "Time step");
    simulate->add_option("--burn-in", sim.burn_in, "Discarded time");
    simulate->add_option("--thin", sim.thin, "Sampling stride in time units");
    simulate->add_option("--paths", sim.paths, "Number of paths")->check(CLI::PositiveNumber);
    simulate->add_option("--samples-per-path", sim.samples_per_path, "Samples kept per path")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--boundary", sim.boundary, "reflect or clamp")->check(CLI::IsMember({"reflect", "clamp"}));
    simulate->add_option("--alpha-level", sim.alpha_level, "KS significance level")->check(CLI::Range(1e-6, 0.5));
    simulate->add_option("--out", sim.out_dir, "Directory for ensemble.txt and ensemble.json");

    FitArgs ft;
    auto* fit = app.add_subcommand("fit", "Fit a family member to samples");
    fit->add_option("--samples", ft.samples, "File with one sample per line")->required();
    fit->add_option("--family", ft.family, "Family tag, e.g. GB or mGB")->required();
    fit->add_option("--method", ft.method, "mle or cdf")->check(CLI::IsMember({"mle", "cdf"}));
    fit->add_option("--init", ft.init, "Starting member as JSON, or @file");
    fit->add_option("--bootstrap", ft.bootstrap, "Bootstrap replicas for a ccdf band (needs --out)");
    fit->add_option("--seed", ft.seed, "Random seed");
    fit->add_option("--alpha-level", ft.alpha_level, "KS significance level")->check(CLI::Range(1e-6, 0.5));
    fit->add_option("--out", ft.out_dir, "Output directory");

    RvArgs rv;
    std::string windows_text = "1,2,3,5,7,9,13,17,21";
    std::string families_text = "GB,mGB";
    auto* rvr = app.add_subcommand("rv-report", "Realized-volatility fits per window length");
    rvr->add_option("--prices", rv.prices, "CSV of date,close")->required();
    rvr->add_option("--n", windows_text, "Comma-separated window lengths");
    rvr->add_option("--families", families_text, "Comma-separated family tags");
    rvr->add_option("--stride", rv.stride, "Window stride")->check(CLI::PositiveNumber);
    rvr->add_option("--bootstrap", rv.bootstrap, "Bootstrap replicas for ccdf bands");
    rvr->add_option("--seed", rv.seed, "Random seed");
    rvr->add_option("--alpha-level", rv.alpha_level, "KS significance level")->check(CLI::Range(1e-6, 0.5));
    rvr->add_option("--out", rv.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(ev, out);
        if (simulate->parsed()) return cmd_simulate(sim, out, err);
        if (fit->parsed()) return cmd_fit(ft, out, err);
        if (rvr->parsed()) {
            rv.windows.clear();
            for (double w : parse_points(windows_text)) {
                if (!(w >= 1.0) || w != std::floor(w)) throw DomainError("window lengths must be positive integers");
                rv.windows.push_back(static_cast<std::size_t>(w));
            }
            rv.families.clear();
            std::istringstream fs_in(families_text);
            for (std::string f; std::getline(fs_in, f, ',');) rv.families.push_back(f);
            return cmd_rv_report(rv, out, err);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace gbfam::cli
