// Command-line driver: builds truncations of the even spectral triples on
// twisted group algebras of solenoid and Bunce-Deddens type groups and runs
// the numeric certification suites.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "ncg/io.hpp"

using namespace ncg;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::uint64_t seed = 0;
    long long budget = 0;
    double tol = 0;
    bool quiet = false;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (sectioned text or JSON)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--format", opts.format, "output format: json|csv");
    cmd->add_option("--seed", opts.seed, "random seed override");
    cmd->add_option("--budget", opts.budget, "ball cardinality budget override");
    cmd->add_option("--tol", opts.tol, "tolerance override");
    cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
    cmd->add_flag("--verbose", opts.verbose, "extra progress output");
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
    ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
    if (opts.seed) cfg.seed = opts.seed;
    if (opts.budget) cfg.budget = opts.budget;
    if (opts.tol > 0) cfg.tol = opts.tol;
    if (!opts.format.empty()) cfg.format = opts.format;
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (const char* env = std::getenv("NCGEO_OUT_DIR")) cfg.out_dir = env;
    cfg.validate();
    return cfg;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 2;
        case Verdict::Undecided: return 3;
    }
    return 3;
}

void log_line(const CommonOpts& opts, const std::string& line) {
    if (!opts.quiet) std::cout << line << "\n";
}

void write_manifest(const ExperimentConfig& cfg, const std::string& command,
                    const std::string& summary, bool ok, double wall) {
    RunManifest m;
    m.command = command;
    m.config_snapshot = config_to_text(cfg);
    m.seed = cfg.seed;
    m.wall_seconds = wall;
    m.summary = summary;
    m.ok = ok;
    write_file(std::filesystem::path(cfg.out_dir) / "manifest.json", manifest_to_json(m));
}

int run_suite_command(const CommonOpts& opts, bool solenoid) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = resolve_config(opts);
    if (opts.config_path.empty()) {
        if (solenoid) {
            cfg.family_kind = "solenoid";
            cfg.p = 2;
            cfg.d = 1;
        } else {
            cfg.family_kind = "bunce-deddens";
            cfg.alpha = {2, 4, 8};
            cfg.cocycle_kind = "bunce-deddens";
            // chordal circle length keeps L_H <= F everywhere, so the ball
            // identities B[alpha_d] = alpha_d hold at every stored radius
            cfg.circle = CircleLength::Chord;
        }
        cfg.levels = {1, 2};
        cfg.radii = {Rational(1), Rational(2)};
        cfg.samples = 20;
    }
    std::string cmd = solenoid ? "suite-solenoid" : "suite-bd";
    try {
        ConvergenceReport rep = solenoid ? run_solenoid_suite(cfg) : run_bd_suite(cfg);
        std::filesystem::path dir(cfg.out_dir);
        write_file(dir / (cmd + (cfg.format == "csv" ? ".csv" : ".json")),
                   cfg.format == "csv" ? report_to_csv(rep) : report_to_json(rep));
        emit_plotdata(cfg, rep, dir);
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(cfg, cmd, verdict_name(rep.overall), rep.overall == Verdict::Pass, wall);
        log_line(opts, std::string("ball identity     ") + verdict_name(rep.ball_verdict));
        log_line(opts, std::string("doubling          ") + verdict_name(rep.doubling_verdict));
        log_line(opts, std::string("hausdorff         ") + verdict_name(rep.hausdorff_verdict));
        log_line(opts, std::string("seminorms         ") + verdict_name(rep.seminorms.verdict));
        log_line(opts, std::string("functional calc   ") + verdict_name(rep.funccalc.verdict));
        log_line(opts, std::string("dynamics          ") + verdict_name(rep.dynamics.verdict));
        for (const auto& b : rep.bridge)
            log_line(opts, "bridge n=" + std::to_string(b.level) + "        " +
                               verdict_name(b.verdict));
        log_line(opts, std::string("overall           ") + verdict_name(rep.overall));
        return verdict_exit(rep.overall);
    } catch (const std::exception& e) {
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(cfg, cmd, std::string("error: ") + e.what(), false, wall);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite truncations of even spectral triples on twisted group algebras"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* doubling = app.add_subcommand("doubling", "ball growth ratios under radius doubling");
    auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance to subgroup levels");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "exact Dirac spectrum of a truncation");
    auto* seminorm_cmd =
        app.add_subcommand("seminorm", "seminorm brackets at level vs window truncations");
    auto* kant = app.add_subcommand("kantorovich", "Kantorovich distance on a line metric");
    auto* tunnel_cmd = app.add_subcommand("tunnel", "extent bounds for a direct-sum tunnel");
    auto* exi = app.add_subcommand("example-interval", "the dilated-interval approximation");
    auto* exn = app.add_subcommand("example-nbar", "the merged-points compactified-N example");
    auto* suite_sol = app.add_subcommand("suite-solenoid", "full solenoid certification suite");
    auto* suite_bd = app.add_subcommand("suite-bd", "full Bunce-Deddens certification suite");

    for (auto* cmd : {doubling, hausdorff, spectrum_cmd, seminorm_cmd, kant, tunnel_cmd, exi, exn,
                      suite_sol, suite_bd})
        add_common(cmd, opts);

    int ex_n = 3;
    int ex_m = 0;
    int ex_samples = 12;
    exi->add_option("-n,--level", ex_n, "dilation level n");
    exi->add_option("-m,--grid", ex_m, "grid size (default 4 n^2)");
    exi->add_option("--samples", ex_samples, "sampled states for the extent bounds");
    exn->add_option("-n,--level", ex_n, "merge level n");
    exn->add_option("-m,--truncation", ex_m, "truncation (default n + 5)");
    exn->add_option("--samples", ex_samples, "sampled states for the extent bounds");

    std::vector<double> kant_coords{0.0, 1.0, 2.0};
    std::vector<double> kant_phi, kant_psi;
    kant->add_option("--points", kant_coords, "line metric coordinates");
    kant->add_option("--phi", kant_phi, "first state (defaults to a Dirac at the left end)");
    kant->add_option("--psi", kant_psi, "second state (defaults to a Dirac at the right end)");
    tunnel_cmd->add_option("--points", kant_coords, "line metric coordinates");

    unsigned haus_level = 1;
    hausdorff->add_option("-n,--level", haus_level, "subgroup level");

    double tunnel_eps = 0.25;
    tunnel_cmd->add_option("--eps", tunnel_eps, "bridge tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (doubling->parsed()) {
            ExperimentConfig cfg = resolve_config(opts);
            Group g = cfg.group();
            double c_bound;
            if (g.kind == FamilyKind::Solenoid) {
                c_bound = std::pow(static_cast<double>(cfg.p), 2.0 * cfg.d);
            } else if (g.kind == FamilyKind::BunceDeddens) {
                double m = 2;
                for (size_t i = 1; i < g.alpha.size(); ++i)
                    m = std::max(m, to_double(g.alpha[i]) / to_double(g.alpha[i - 1]));
                c_bound = m * m;
            } else {
                c_bound = static_cast<double>(g.finite_modulus);
            }
            DoublingReport rep =
                doubling_report(g, cfg.length(), 2.0, cfg.radii, c_bound, cfg.budget);
            std::ostringstream os;
            os << "radius,ball,ball_doubled,ratio\n";
            for (const auto& r : rep.rows)
                os << r.radius << "," << r.ball_small << "," << r.ball_large << ","
                   << format_full(r.ratio) << "\n";
            write_file(std::filesystem::path(cfg.out_dir) / "doubling.csv", os.str());
            log_line(opts, "max ratio " + format_full(rep.max_ratio));
            write_manifest(cfg, "doubling", "max ratio " + format_full(rep.max_ratio), true, 0);
            return rep.bounded_by_c ? 0 : 2;
        }
        if (hausdorff->parsed()) {
            ExperimentConfig cfg = resolve_config(opts);
            Group g = cfg.group();
            HausdorffEstimate est =
                hausdorff_subgroup_distance(g, cfg.length_h(), cfg.length(), haus_level,
                                            cfg.radii.back() * Rational(cfg.window_factor),
                                            cfg.budget);
            log_line(opts, "enumerated " + format_full(est.enumerated) +
                               (est.exact ? " exact " + format_full(*est.exact) : ""));
            write_manifest(cfg, "hausdorff", format_full(est.enumerated), true, 0);
            return 0;
        }
        if (spectrum_cmd->parsed()) {
            ExperimentConfig cfg = resolve_config(opts);
            Group g = cfg.group();
            Ball b = enumerate_ball(g, cfg.length(), cfg.radii.back(), cfg.budget);
            TruncatedTriple t =
                make_triple(b, cfg.length_h(), cfg.length_f(), cfg.cocycle(), cfg.fiber_blocks);
            write_file(std::filesystem::path(cfg.out_dir) / "spectrum.csv",
                       spectrum_to_csv(spectrum(t), g));
            log_line(opts, "ball " + std::to_string(t.ball.size()) + " elements, spectrum written");
            write_manifest(cfg, "spectrum", "ok", true, 0);
            return 0;
        }
        if (seminorm_cmd->parsed()) {
            ExperimentConfig cfg = resolve_config(opts);
            SeminormComparisonReport rep = seminorm_comparison(cfg);
            std::ostringstream os;
            os << "level,radius,f_id,ln_lower,ln_upper,lw_lower,lw_upper,ratio\n";
            for (const auto& r : rep.rows)
                os << r.level << "," << r.radius << "," << r.f_id << ","
                   << format_full(r.ln_lower) << "," << format_full(r.ln_upper) << ","
                   << format_full(r.lw_lower) << "," << format_full(r.lw_upper) << ","
                   << (r.ratio_defined ? format_full(r.ratio) : "") << "\n";
            write_file(std::filesystem::path(cfg.out_dir) / "seminorm.csv", os.str());
            log_line(opts, std::string("seminorm comparison ") + verdict_name(rep.verdict) +
                               ", max ratio " + format_full(rep.max_ratio));
            write_manifest(cfg, "seminorm", verdict_name(rep.verdict),
                           rep.verdict == Verdict::Pass, 0);
            return verdict_exit(rep.verdict);
        }
        if (kant->parsed()) {
            ExperimentConfig cfg = resolve_config(opts);
            std::vector<Rational> coords;
            for (double c : kant_coords) coords.push_back(Rational(c));
            FiniteQcms q = FiniteQcms::line_metric(coords);
            int m = q.points();
            std::vector<Rational> phi = dirac_state(m, 0), psi = dirac_state(m, m - 1);
            auto to_state = [m](const std::vector<double>& v) {
                std::vector<Rational> s;
                for (double x : v) s.push_back(Rational(x));
                if (static_cast<int>(s.size()) != m)
                    throw std::invalid_argument("state size must match the point count");
                return s;
            };
            if (!kant_phi.empty()) phi = to_state(kant_phi);
            if (!kant_psi.empty()) psi = to_state(kant_psi);
            KantorovichResult r = kantorovich(q, phi, psi);
            write_file(std::filesystem::path(cfg.out_dir) / "distance_table.csv",
                       distance_table_csv(q));
            log_line(opts, "kantorovich " + (r.exact ? r.exact->str() : format_full(r.value)) +
                               "; Dirac distance table written");
            write_manifest(cfg, "kantorovich", format_full(r.value), true, 0);
            return 0;
        }
        if (tunnel_cmd->parsed()) {
            ExperimentConfig cfg = resolve_config(opts);
            // identity tunnel between two copies of a line metric
            std::vector<Rational> coords;
            for (double c : kant_coords) coords.push_back(Rational(std::llround(c * 720720), 720720));
            FiniteQcms line = FiniteQcms::line_metric(coords);
            std::vector<int> id(line.points());
            for (int i = 0; i < line.points(); ++i) id[i] = i;
            std::mt19937_64 rng(cfg.seed);
            Rational eps(std::llround(tunnel_eps * 1000000), 1000000);
            TunnelSpec t = TunnelSpec::from_point_map(line, line, id, eps);
            ExtentBounds eb = tunnel_extent_bounds(t, cfg.samples, rng);
            log_line(opts, "extent upper " + format_full(eb.upper) + (eb.upper_certified ? " (certified)" : " (uncertified)") +
                               ", lower " + format_full(eb.lower));
            write_manifest(cfg, "tunnel", format_full(eb.upper), eb.upper_certified, 0);
            return eb.upper_certified ? 0 : 3;
        }
        if (exi->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            ExperimentConfig cfg = resolve_config(opts);
            int m = ex_m > 0 ? ex_m : 4 * ex_n * ex_n;
            std::mt19937_64 rng(cfg.seed);
            IntervalExampleReport rep = interval_example(ex_n, m, ex_samples, rng);
            write_file(std::filesystem::path(cfg.out_dir) / "example_interval.json",
                       interval_report_to_json(rep));
            double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            bool ok = rep.extent.upper_certified && rep.bridge.holds;
            write_manifest(cfg, "example-interval", ok ? "PASS" : "UNDECIDED", ok, wall);
            log_line(opts, "L(f_n) = " + rep.l_base_of_witness.str() + ", L_n(f_n) = " +
                               rep.l_n_of_witness.str() + ", extent <= " +
                               format_full(rep.eps_used) +
                               (rep.extent.upper_certified ? " (certified)" : " (uncertified)"));
            return ok ? 0 : 3;
        }
        if (exn->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            ExperimentConfig cfg = resolve_config(opts);
            int m = ex_m > 0 ? ex_m : ex_n + 5;
            std::mt19937_64 rng(cfg.seed);
            NbarExampleReport rep = nbar_example(ex_n, m, ex_samples, rng);
            write_file(std::filesystem::path(cfg.out_dir) / "example_nbar.json",
                       nbar_report_to_json(rep));
            double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            bool ok = rep.extent.upper_certified && !rep.bridge.holds;
            write_manifest(cfg, "example-nbar", ok ? "PASS" : "UNDECIDED", ok, wall);
            log_line(opts, "L_inf(d0) = " + rep.l_inf_delta0.str() + ", L_n(d0) = " +
                               rep.l_n_delta0.str() + ", obstruction = " + rep.obstruction.str() +
                               ", extent <= " + format_full(rep.eps_used));
            return ok ? 0 : 3;
        }
        if (suite_sol->parsed()) return run_suite_command(opts, true);
        if (suite_bd->parsed()) return run_suite_command(opts, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
