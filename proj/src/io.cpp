#include "ncg/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ncg {

using nlohmann::json;

std::string format_full(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

namespace {

json verdict_json(Verdict v) { return verdict_name(v); }

json hausdorff_json(const HausdorffEstimate& est) {
    json j;
    if (est.exact) j["exact"] = format_full(*est.exact);
    j["enumerated"] = format_full(est.enumerated);
    j["window_radius"] = est.window_radius.str();
    j["window_size"] = est.window_size;
    return j;
}

}  // namespace

std::string ball_to_json(const Ball& b, const LengthFunction& h, const LengthFunction& f) {
    json j;
    j["family"] = b.group.describe();
    j["radius"] = b.radius.str();
    json rows = json::array();
    for (int i = 0; i < b.size(); ++i) {
        const GroupElement& x = b.elems[i];
        double lh = h(b.group, x), lf = f(b.group, x);
        rows.push_back({{"id", i},
                        {"element", to_string(b.group, x)},
                        {"len_h", format_full(lh)},
                        {"len_f", format_full(lf)},
                        {"len", format_full(b.length ? (*b.length)(b.group, x)
                                                     : std::max(lh, lf))}});
    }
    j["elements"] = rows;
    return j.dump(2);
}

std::string ball_to_csv(const Ball& b, const LengthFunction& h, const LengthFunction& f) {
    std::ostringstream os;
    os << "id,element,len_h,len_f,len\n";
    for (int i = 0; i < b.size(); ++i) {
        const GroupElement& x = b.elems[i];
        double lh = h(b.group, x), lf = f(b.group, x);
        double l = b.length ? (*b.length)(b.group, x) : std::max(lh, lf);
        os << i << ",\"" << to_string(b.group, x) << "\"," << format_full(lh) << ","
           << format_full(lf) << "," << format_full(l) << "\n";
    }
    return os.str();
}

std::string algebra_element_to_json(const AlgebraElement& f) {
    json rows = json::array();
    for (const auto& [x, c] : f.terms())
        rows.push_back({{"element", to_string(f.group(), x)},
                        {"re", format_full(c.real())},
                        {"im", format_full(c.imag())}});
    return rows.dump(2);
}

std::string spectrum_to_csv(const std::vector<SpectrumEntry>& sp, const Group& g) {
    std::ostringstream os;
    os << "eigenvalue,multiplicity,generator\n";
    for (const auto& e : sp)
        os << format_full(e.value) << "," << e.multiplicity << ",\"" << to_string(g, e.generator)
           << "\"\n";
    return os.str();
}

std::string operator_to_coo(const SpCMat& m) {
    std::ostringstream os;
    os << "row,col,re,im\n";
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpCMat::InnerIterator it(m, k); it; ++it)
            os << it.row() << "," << it.col() << "," << format_full(it.value().real()) << ","
               << format_full(it.value().imag()) << "\n";
    return os.str();
}

namespace {

json seminorm_json(const SeminormComparisonReport& rep) {
    json j;
    j["verdict"] = verdict_json(rep.verdict);
    j["violations"] = rep.violations;
    j["max_ratio"] = format_full(rep.max_ratio);
    j["predicted_ratio_bound"] = format_full(rep.predicted_ratio_bound);
    j["diameter_proxy"] = format_full(rep.diameter_proxy);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"level", r.level},
                        {"radius", r.radius.str()},
                        {"f_id", r.f_id},
                        {"ln_lower", format_full(r.ln_lower)},
                        {"ln_upper", format_full(r.ln_upper)},
                        {"lw_lower", format_full(r.lw_lower)},
                        {"lw_upper", format_full(r.lw_upper)},
                        {"ratio", r.ratio_defined ? json(format_full(r.ratio)) : json()}});
    j["rows"] = rows;
    return j;
}

json funccalc_json(const FuncCalcReport& rep) {
    json j;
    j["verdict"] = verdict_json(rep.verdict);
    j["function"] = rep.function;
    j["window_radius"] = rep.window_radius.str();
    j["non_increasing"] = rep.non_increasing;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"level", r.level}, {"deviation", format_full(r.deviation)}});
    j["rows"] = rows;
    return j;
}

json dynamics_json(const DynamicsReport& rep) {
    json j;
    j["verdict"] = verdict_json(rep.verdict);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"level", r.level},
                        {"max_deviation", format_full(r.max_deviation)},
                        {"lipschitz_violation", format_full(r.lipschitz_violation)},
                        {"samples", r.samples}});
    j["rows"] = rows;
    return j;
}

json bridge_json(const BridgeCertificateReport& rep) {
    json j;
    j["verdict"] = verdict_json(rep.verdict);
    j["level"] = rep.level;
    j["epsilon"] = format_full(rep.epsilon);
    j["diameter_proxy"] = format_full(rep.diameter_proxy);
    json rows = json::array();
    for (const auto& s : rep.samples)
        rows.push_back({{"id", s.id},
                        {"direction", s.direction},
                        {"verdict", verdict_json(s.verdict)},
                        {"lhs", format_full(s.lhs)},
                        {"rhs", format_full(s.rhs)},
                        {"note", s.note}});
    j["samples"] = rows;
    return j;
}

}  // namespace

std::string report_to_json(const ConvergenceReport& rep) {
    json j;
    j["family"] = rep.family;
    j["overall"] = verdict_json(rep.overall);
    j["wall_seconds"] = format_full(rep.wall_seconds);
    json balls = json::array();
    for (const auto& r : rep.ball_rows)
        balls.push_back({{"radius", r.radius.str()}, {"count", r.count}, {"expected", r.expected}});
    j["ball_identity"] = {{"verdict", verdict_json(rep.ball_verdict)}, {"rows", balls}};
    json drows = json::array();
    for (const auto& r : rep.doubling.rows)
        drows.push_back({{"radius", r.radius.str()},
                         {"ball", r.ball_small},
                         {"ball_scaled", r.ball_large},
                         {"ratio", format_full(r.ratio)}});
    j["doubling"] = {{"verdict", verdict_json(rep.doubling_verdict)},
                     {"theta", format_full(rep.doubling.theta)},
                     {"c", format_full(rep.doubling.c)},
                     {"max_ratio", format_full(rep.doubling.max_ratio)},
                     {"rows", drows}};
    json hrows = json::array();
    for (const auto& r : rep.hausdorff_rows)
        hrows.push_back({{"level", r.level}, {"estimate", hausdorff_json(r.estimate)}});
    j["hausdorff"] = {{"verdict", verdict_json(rep.hausdorff_verdict)}, {"rows", hrows}};
    j["seminorms"] = seminorm_json(rep.seminorms);
    j["functional_calculus"] = funccalc_json(rep.funccalc);
    j["dynamics"] = dynamics_json(rep.dynamics);
    json bridges = json::array();
    for (const auto& b : rep.bridge) bridges.push_back(bridge_json(b));
    j["bridge_certificates"] = bridges;
    j["config"] = rep.config_snapshot;
    return j.dump(2);
}

std::string report_to_csv(const ConvergenceReport& rep) {
    std::ostringstream os;
    os << "section,level,key,value\n";
    os << "overall,," << verdict_name(rep.overall) << ",\n";
    for (const auto& r : rep.ball_rows)
        os << "ball_identity,,r=" << r.radius << "," << r.count << "/" << r.expected << "\n";
    for (const auto& r : rep.doubling.rows)
        os << "doubling,,r=" << r.radius << "," << format_full(r.ratio) << "\n";
    for (const auto& r : rep.hausdorff_rows)
        os << "hausdorff," << r.level << ",enumerated," << format_full(r.estimate.enumerated)
           << "\n";
    for (const auto& r : rep.seminorms.rows)
        os << "seminorm," << r.level << ",f" << r.f_id << ","
           << format_full(r.ln_lower) << ";" << format_full(r.lw_lower) << "\n";
    for (const auto& r : rep.funccalc.rows)
        os << "funccalc," << r.level << ",deviation," << format_full(r.deviation) << "\n";
    for (const auto& r : rep.dynamics.rows)
        os << "dynamics," << r.level << ",max_deviation," << format_full(r.max_deviation) << "\n";
    for (const auto& b : rep.bridge)
        os << "bridge," << b.level << ",verdict," << verdict_name(b.verdict) << "\n";
    return os.str();
}

std::string distance_table_csv(const FiniteQcms& q) {
    std::ostringstream os;
    int m = q.points();
    os << "point";
    for (int j = 0; j < m; ++j) os << "," << q.labels[j];
    os << "\n";
    for (int i = 0; i < m; ++i) {
        os << q.labels[i];
        for (int j = 0; j < m; ++j) {
            if (i == j) {
                os << ",0";
                continue;
            }
            KantorovichResult r = kantorovich(q, dirac_state(m, i), dirac_state(m, j));
            os << "," << format_full(r.value);
        }
        os << "\n";
    }
    return os.str();
}

namespace {

json extent_json(const ExtentBounds& e) {
    return {{"upper", format_full(e.upper)},
            {"upper_certified", e.upper_certified},
            {"lower", format_full(e.lower)},
            {"max_pairing_distance", format_full(e.max_pairing_distance)},
            {"samples", e.samples},
            {"isometry_ok", e.isometry.ok},
            {"isometry_worst_excess", format_full(e.isometry.worst_excess)}};
}

json bridge_report_json(const BridgeBuilderReport& b) {
    json j;
    j["holds"] = b.holds;
    j["exhaustive"] = b.exhaustive;
    if (!b.holds) {
        j["failed_direction"] = b.failed_direction;
        json w = json::array();
        for (double v : b.witness) w.push_back(format_full(v));
        j["witness"] = w;
        j["witness_excess"] = format_full(b.witness_excess);
    }
    j["probes_forward"] = b.probes_forward;
    j["probes_backward"] = b.probes_backward;
    return j;
}

}  // namespace

std::string interval_report_to_json(const IntervalExampleReport& rep) {
    json j;
    j["example"] = "interval";
    j["n"] = rep.n;
    j["grid_m"] = rep.grid_m;
    j["seminorm_values"] = {{"lipschitz_of_witness", rep.l_base_of_witness.str()},
                            {"dilated_of_witness", rep.l_n_of_witness.str()},
                            {"ratio", format_full(rep.ratio)}};
    j["extent_upper"] = format_full(rep.eps_used);
    j["extent_lower"] = format_full(rep.extent.lower);
    j["extent"] = extent_json(rep.extent);
    j["bridge_builder"] = bridge_report_json(rep.bridge);
    j["bridge_epsilon"] = format_full(rep.bridge_eps);
    return j.dump(2);
}

std::string nbar_report_to_json(const NbarExampleReport& rep) {
    json j;
    j["example"] = "nbar";
    j["n"] = rep.n;
    j["truncation_m"] = rep.truncation_m;
    j["seminorm_values"] = {{"limit_of_delta0", rep.l_inf_delta0.str()},
                            {"level_of_delta0", rep.l_n_delta0.str()},
                            {"obstruction", rep.obstruction.str()}};
    j["extent_upper"] = format_full(rep.eps_used);
    j["extent_lower"] = format_full(rep.extent.lower);
    j["extent"] = extent_json(rep.extent);
    j["bridge_builder"] = bridge_report_json(rep.bridge);
    j["bridge_epsilon"] = format_full(rep.bridge_eps);
    return j.dump(2);
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["seed"] = m.seed;
    j["artifact_version"] = m.artifact_version;
    j["wall_seconds"] = format_full(m.wall_seconds);
    j["summary"] = m.summary;
    j["ok"] = m.ok;
    j["config"] = m.config_snapshot;
    return j.dump(2);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void emit_plotdata(const ExperimentConfig& cfg, const ConvergenceReport& rep,
                   const std::filesystem::path& dir) {
    Group g = cfg.group();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    Rational wr = cfg.radii.back() * Rational(cfg.window_factor);
    Ball window = enumerate_ball(g, L, wr, cfg.budget);

    {
        // the window scatter: (L_H, log_scale F) per element
        std::ostringstream os;
        os << "# len_h log_scale_len_f\n";
        double base = g.kind == FamilyKind::Solenoid ? static_cast<double>(g.prime) : 2.0;
        for (const GroupElement& x : window.elems) {
            double lf = F(g, x);
            double ll = lf > 0 ? std::log(lf) / std::log(base) : 0.0;
            os << format_full(H(g, x)) << " " << format_full(ll) << "\n";
        }
        write_file(dir / "scatter_window.dat", os.str());
    }
    {
        TruncatedTriple t = make_triple(window, H, F, cfg.cocycle(), cfg.fiber_blocks);
        std::ostringstream os;
        os << "# eigenvalue multiplicity\n";
        for (const auto& e : spectrum(t))
            os << format_full(e.value) << " " << e.multiplicity << "\n";
        write_file(dir / "spectrum_window.dat", os.str());
    }
    {
        std::ostringstream os;
        os << "# level deviation\n";
        for (const auto& r : rep.funccalc.rows)
            os << r.level << " " << format_full(r.deviation) << "\n";
        write_file(dir / "funccalc_deviation.dat", os.str());
    }
    {
        std::ostringstream os;
        os << "# level hausdorff_enumerated hausdorff_exact\n";
        for (const auto& r : rep.hausdorff_rows) {
            os << r.level << " " << format_full(r.estimate.enumerated) << " "
               << (r.estimate.exact ? format_full(*r.estimate.exact) : std::string("nan")) << "\n";
        }
        write_file(dir / "hausdorff.dat", os.str());
    }
    {
        std::ostringstream os;
        os << "# level max_dynamics_deviation\n";
        for (const auto& r : rep.dynamics.rows)
            os << r.level << " " << format_full(r.max_deviation) << "\n";
        write_file(dir / "dynamics_deviation.dat", os.str());
    }
}

}  // namespace ncg
