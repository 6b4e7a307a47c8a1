#include "ncg/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ncg {

namespace {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void fail_at(const std::string& origin, int line, int col, const std::string& what) {
    std::ostringstream os;
    os << origin << ":" << line << ":" << col << ": " << what;
    throw ParseError(os.str());
}

[[noreturn]] void fail_field(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config field '" + field + "': " + what);
}

Rational parse_rational(const std::string& field, const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            BigInt den = 1;
            for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            return Rational(BigInt(digits), den);
        }
        return Rational(BigInt(s));
    } catch (const std::exception&) {
        fail_field(field, "not a rational number: '" + s + "'");
    }
}

double parse_double(const std::string& field, const std::string& s) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_field(field, "not a number: '" + s + "'");
    }
}

long long parse_int(const std::string& field, const std::string& s) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_field(field, "not an integer: '" + s + "'");
    }
}

bool parse_bool(const std::string& field, const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    fail_field(field, "not a boolean: '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
    std::string field = section + "." + key;
    if (section == "family") {
        if (key == "kind") cfg.family_kind = value;
        else if (key == "p") cfg.p = static_cast<unsigned>(parse_int(field, value));
        else if (key == "d") cfg.d = static_cast<unsigned>(parse_int(field, value));
        else if (key == "alpha") {
            cfg.alpha.clear();
            for (const auto& a : split_list(value)) cfg.alpha.push_back(BigInt(a));
        } else if (key == "modulus") cfg.finite_modulus = static_cast<unsigned>(parse_int(field, value));
        else fail_field(field, "unknown key");
    } else if (section == "length") {
        if (key == "h_norm") {
            if (value == "max") cfg.h_norm = HNorm::Max;
            else if (value == "one") cfg.h_norm = HNorm::One;
            else if (value == "euclidean") cfg.h_norm = HNorm::Euclidean;
            else fail_field(field, "expected max|one|euclidean");
        } else if (key == "circle") {
            if (value == "arc") cfg.circle = CircleLength::Arc;
            else if (value == "chord") cfg.circle = CircleLength::Chord;
            else fail_field(field, "expected arc|chord");
        } else if (key == "combinator") {
            if (value == "max") cfg.combinator = Combinator::Max;
            else if (value == "sum") cfg.combinator = Combinator::Sum;
            else if (value == "euclidean") cfg.combinator = Combinator::Euclidean;
            else if (value == "pnorm") cfg.combinator = Combinator::PNorm;
            else fail_field(field, "expected max|sum|euclidean|pnorm");
        } else if (key == "pnorm_p") cfg.pnorm_p = parse_double(field, value);
        else fail_field(field, "unknown key");
    } else if (section == "cocycle") {
        if (key == "kind") cfg.cocycle_kind = value;
        else if (key == "theta") cfg.theta = parse_rational(field, value);
        else if (key == "q") cfg.finite_q = static_cast<int>(parse_int(field, value));
        else fail_field(field, "unknown key");
    } else if (section == "experiment") {
        if (key == "levels") {
            cfg.levels.clear();
            for (const auto& a : split_list(value))
                cfg.levels.push_back(static_cast<unsigned>(parse_int(field, a)));
        } else if (key == "radii") {
            cfg.radii.clear();
            for (const auto& a : split_list(value)) cfg.radii.push_back(parse_rational(field, a));
        } else if (key == "window_factor") cfg.window_factor = static_cast<unsigned>(parse_int(field, value));
        else if (key == "samples") cfg.samples = static_cast<int>(parse_int(field, value));
        else if (key == "support") cfg.support = static_cast<int>(parse_int(field, value));
        else if (key == "fiber_blocks") cfg.fiber_blocks = static_cast<int>(parse_int(field, value));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(field, value));
        else if (key == "budget") cfg.budget = parse_int(field, value);
        else if (key == "tol") cfg.tol = parse_double(field, value);
        else if (key == "times") {
            cfg.times.clear();
            for (const auto& a : split_list(value)) cfg.times.push_back(parse_double(field, a));
        } else if (key == "diameter_proxy") cfg.diameter_proxy = parse_double(field, value);
        else if (key == "epsilon") cfg.epsilon = parse_double(field, value);
        else fail_field(field, "unknown key");
    } else if (section == "output") {
        if (key == "dir") cfg.out_dir = value;
        else if (key == "format") {
            if (value != "json" && value != "csv") fail_field(field, "expected json|csv");
            cfg.format = value;
        } else if (key == "verbosity") cfg.verbosity = static_cast<int>(parse_int(field, value));
        else fail_field(field, "unknown key");
    } else {
        fail_field(section, "unknown section");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                fail_at(origin, lineno, static_cast<int>(first + 1), "unterminated section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail_at(origin, lineno, static_cast<int>(first + 1), "expected key = value");
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty()) fail_at(origin, lineno, static_cast<int>(first + 1), "empty key");
        if (section.empty())
            fail_at(origin, lineno, static_cast<int>(first + 1), "key outside any [section]");
        apply_key(cfg, section, key, value);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    for (auto& [section, body] : j.items()) {
        if (!body.is_object()) fail_field(section, "expected an object");
        for (auto& [key, val] : body.items()) {
            std::string s;
            if (val.is_string())
                s = val.get<std::string>();
            else if (val.is_boolean())
                s = val.get<bool>() ? "true" : "false";
            else if (val.is_number_integer())
                s = std::to_string(val.get<long long>());
            else if (val.is_number_float()) {
                std::ostringstream os;
                os.precision(17);
                os << val.get<double>();
                s = os.str();
            } else if (val.is_array()) {
                std::ostringstream os;
                bool firstv = true;
                for (auto& v : val) {
                    if (!firstv) os << ",";
                    firstv = false;
                    if (v.is_string())
                        os << v.get<std::string>();
                    else {
                        std::ostringstream vs;
                        vs.precision(17);
                        if (v.is_number_integer())
                            vs << v.get<long long>();
                        else
                            vs << v.get<double>();
                        os << vs.str();
                    }
                }
                s = os.str();
            } else {
                fail_field(section + "." + key, "unsupported JSON value type");
            }
            apply_key(cfg, section, key, s);
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".json") return parse_config_json(buf.str());
    return parse_config_text(buf.str(), path.string());
}

void ExperimentConfig::validate() const {
    if (family_kind != "solenoid" && family_kind != "bunce-deddens" && family_kind != "zalpha" &&
        family_kind != "finite")
        fail_field("family.kind", "expected solenoid|bunce-deddens|zalpha|finite");
    if (family_kind == "solenoid") (void)Group::solenoid(p, d);
    if (family_kind == "bunce-deddens" || family_kind == "zalpha")
        (void)Group::bunce_deddens(alpha, family_kind == "bunce-deddens");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) fail_field("experiment.radii", "radii not increasing");
    if (radii.empty()) fail_field("experiment.radii", "at least one radius required");
    if (levels.empty()) fail_field("experiment.levels", "at least one level required");
    if (samples < 1) fail_field("experiment.samples", "must be >= 1");
    if (support < 1) fail_field("experiment.support", "must be >= 1");
    if (fiber_blocks < 1) fail_field("experiment.fiber_blocks", "must be >= 1");
    if (budget < 1) fail_field("experiment.budget", "must be >= 1");
    if (!(tol > 0)) fail_field("experiment.tol", "must be positive");
    if (window_factor < 2) fail_field("experiment.window_factor", "must be >= 2");
    if (combinator == Combinator::PNorm && !(pnorm_p >= 1.0))
        fail_field("length.pnorm_p", "p >= 1 required for a monotone norm");
    if (cocycle_kind != "trivial" && cocycle_kind != "bicharacter" &&
        cocycle_kind != "bunce-deddens" && cocycle_kind != "finite")
        fail_field("cocycle.kind", "expected trivial|bicharacter|bunce-deddens|finite");
    if (format != "json" && format != "csv") fail_field("output.format", "expected json|csv");
}

Group ExperimentConfig::group() const {
    if (family_kind == "solenoid") return Group::solenoid(p, d);
    if (family_kind == "bunce-deddens") return Group::bunce_deddens(alpha, true);
    if (family_kind == "zalpha") return Group::zalpha(alpha);
    return Group::finite_test(finite_modulus, d);
}

LengthFunction ExperimentConfig::length_h() const { return default_length_h(group(), h_norm, circle); }

LengthFunction ExperimentConfig::length_f() const { return default_length_f(group()); }

LengthFunction ExperimentConfig::length() const {
    return LengthFunction::combine(length_h(), length_f(), combinator, pnorm_p);
}

Cocycle ExperimentConfig::cocycle() const {
    if (cocycle_kind == "trivial") return Cocycle::trivial();
    if (cocycle_kind == "bunce-deddens") return Cocycle::bunce_deddens();
    if (cocycle_kind == "finite") return Cocycle::finite_bicharacter(finite_q);
    // bicharacter: skew form theta (x_1 y_2 - x_2 y_1) on the first two axes
    unsigned dd = d;
    if (dd < 2)
        fail_field("cocycle.kind", "bicharacter requires rank >= 2");
    std::vector<std::vector<Rational>> th(dd, std::vector<Rational>(dd, Rational(0)));
    th[0][1] = theta;
    th[1][0] = -theta;
    return Cocycle::solenoid_bicharacter(std::move(th));
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[family]\n";
    os << "kind = " << cfg.family_kind << "\n";
    os << "p = " << cfg.p << "\n";
    os << "d = " << cfg.d << "\n";
    os << "alpha = ";
    for (size_t i = 0; i < cfg.alpha.size(); ++i) os << (i ? "," : "") << cfg.alpha[i];
    os << "\n";
    os << "modulus = " << cfg.finite_modulus << "\n\n";
    os << "[length]\n";
    os << "h_norm = "
       << (cfg.h_norm == HNorm::Max ? "max" : cfg.h_norm == HNorm::One ? "one" : "euclidean")
       << "\n";
    os << "circle = " << (cfg.circle == CircleLength::Arc ? "arc" : "chord") << "\n";
    os << "combinator = "
       << (cfg.combinator == Combinator::Max       ? "max"
           : cfg.combinator == Combinator::Sum     ? "sum"
           : cfg.combinator == Combinator::Euclidean ? "euclidean"
                                                     : "pnorm")
       << "\n";
    {
        std::ostringstream ps;
        ps.precision(17);
        ps << cfg.pnorm_p;
        os << "pnorm_p = " << ps.str() << "\n\n";
    }
    os << "[cocycle]\n";
    os << "kind = " << cfg.cocycle_kind << "\n";
    os << "theta = " << cfg.theta << "\n";
    os << "q = " << cfg.finite_q << "\n\n";
    os << "[experiment]\n";
    os << "levels = ";
    for (size_t i = 0; i < cfg.levels.size(); ++i) os << (i ? "," : "") << cfg.levels[i];
    os << "\n";
    os << "radii = ";
    for (size_t i = 0; i < cfg.radii.size(); ++i) os << (i ? "," : "") << cfg.radii[i];
    os << "\n";
    os << "window_factor = " << cfg.window_factor << "\n";
    os << "samples = " << cfg.samples << "\n";
    os << "support = " << cfg.support << "\n";
    os << "fiber_blocks = " << cfg.fiber_blocks << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "budget = " << cfg.budget << "\n";
    {
        std::ostringstream ts;
        ts.precision(17);
        ts << cfg.tol;
        os << "tol = " << ts.str() << "\n";
    }
    os << "times = ";
    {
        std::ostringstream ts;
        ts.precision(17);
        for (size_t i = 0; i < cfg.times.size(); ++i) ts << (i ? "," : "") << cfg.times[i];
        os << ts.str() << "\n";
    }
    {
        std::ostringstream ds;
        ds.precision(17);
        ds << cfg.diameter_proxy << " ";
        std::ostringstream es;
        es.precision(17);
        es << cfg.epsilon;
        os << "diameter_proxy = " << ds.str().substr(0, ds.str().size() - 1) << "\n";
        os << "epsilon = " << es.str() << "\n\n";
    }
    os << "[output]\n";
    os << "dir = " << cfg.out_dir << "\n";
    os << "format = " << cfg.format << "\n";
    os << "verbosity = " << cfg.verbosity << "\n";
    return os.str();
}

std::string config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["family"]["kind"] = cfg.family_kind;
    j["family"]["p"] = cfg.p;
    j["family"]["d"] = cfg.d;
    {
        std::vector<std::string> as;
        for (const auto& a : cfg.alpha) as.push_back(a.str());
        j["family"]["alpha"] = as;
    }
    j["family"]["modulus"] = cfg.finite_modulus;
    j["length"]["h_norm"] =
        cfg.h_norm == HNorm::Max ? "max" : (cfg.h_norm == HNorm::One ? "one" : "euclidean");
    j["length"]["circle"] = cfg.circle == CircleLength::Arc ? "arc" : "chord";
    j["length"]["combinator"] = cfg.combinator == Combinator::Max       ? "max"
                                : cfg.combinator == Combinator::Sum     ? "sum"
                                : cfg.combinator == Combinator::Euclidean ? "euclidean"
                                                                          : "pnorm";
    j["length"]["pnorm_p"] = cfg.pnorm_p;
    j["cocycle"]["kind"] = cfg.cocycle_kind;
    j["cocycle"]["theta"] = cfg.theta.str();
    j["cocycle"]["q"] = cfg.finite_q;
    j["experiment"]["levels"] = cfg.levels;
    {
        std::vector<std::string> rs;
        for (const auto& r : cfg.radii) rs.push_back(r.str());
        j["experiment"]["radii"] = rs;
    }
    j["experiment"]["window_factor"] = cfg.window_factor;
    j["experiment"]["samples"] = cfg.samples;
    j["experiment"]["support"] = cfg.support;
    j["experiment"]["fiber_blocks"] = cfg.fiber_blocks;
    j["experiment"]["seed"] = cfg.seed;
    j["experiment"]["budget"] = cfg.budget;
    j["experiment"]["tol"] = cfg.tol;
    j["experiment"]["times"] = cfg.times;
    j["experiment"]["diameter_proxy"] = cfg.diameter_proxy;
    j["experiment"]["epsilon"] = cfg.epsilon;
    j["output"]["dir"] = cfg.out_dir;
    j["output"]["format"] = cfg.format;
    j["output"]["verbosity"] = cfg.verbosity;
    return j.dump(2);
}

}  // namespace ncg
