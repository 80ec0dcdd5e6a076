#include "oscillab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oscillab {

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

bool parse_number(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    // from_chars<double> is fine on this toolchain, but strtod keeps the
    // "1/3"-style fractions out and accepts plain decimals only
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

bool parse_bool(const std::string& s, bool& out) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return out = true, true;
    if (t == "false" || t == "0" || t == "no") return out = false, true;
    return false;
}

bool parse_size_list(const std::string& s, std::vector<std::size_t>& out) {
    out.clear();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t v = 0;
        if (!parse_number(trim(item), v) || v == 0) return false;
        out.push_back(v);
    }
    return !out.empty();
}

bool valid_poly(const std::string& p) {
    // <coeff>*n^<d> with coeff "sqrt2" or a plain decimal, 1 <= d <= 4
    const auto star = p.find("*n^");
    if (star == std::string::npos) return false;
    const std::string coeff = p.substr(0, star);
    const std::string deg = p.substr(star + 3);
    int d = 0;
    if (!parse_number(deg, d) || d < 1 || d > 4) return false;
    if (coeff == "sqrt2") return true;
    double c = 0.0;
    return parse_number(coeff, c) && c != 0.0;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error("config error:\n  " + join(issues, "\n  ")), issues_(std::move(issues)) {}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{
        "stats-oracle",    "lepingle",           "projection-growth", "weyl",
        "multiplier-error", "ergodic-convergence", "whitney-check",     "acceptance-all",
    };
    return names;
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> issues;
    auto bad = [&](const std::string& path, const std::string& why) {
        issues.push_back(path + ": " + why);
    };

    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), experiment) == names.end())
        bad("experiment", "unknown name '" + experiment + "' (expected one of " +
                              join(names, ", ") + ")");
    if (threads < 0) bad("threads", "must be >= 0 (0 = all cores)");

    if (log2_domain < 1 || log2_domain > 20) bad("grid.log2_domain", "must be in [1, 20]");
    if (log2_samples <= log2_domain || log2_samples > 24)
        bad("grid.log2_samples", "must exceed grid.log2_domain and stay <= 24");

    if (trials < 1) bad("growth.trials", "must be positive (got " + std::to_string(trials) + ")");
    if (sets < 1) bad("growth.sets", "must be positive");
    if (trials >= 1 && sets >= 1 && trials < sets)
        bad("growth.trials", "must cover growth.sets (one trial per set minimum)");
    if (n_list.empty()) bad("growth.n_list", "must name at least one N");
    if (!(lambda > 0.0)) bad("growth.lambda", "jump altitude must be positive");

    if (depth < 1 || depth > 24) bad("martingale.depth", "must be in [1, 24]");
    if (!(rho >= 1.0)) bad("projections.rho", "closeness factor must be >= 1");

    if (!(delta0 > 0.0) || !(delta0 < 1.0)) bad("multiplier.delta0", "must lie in (0, 1)");
    if (mult_grid < 4 || (mult_grid & (mult_grid - 1)) != 0)
        bad("multiplier.grid", "must be a power of two >= 4");

    if (lacunary_r < 1) bad("ergodic.R", "lacunary density must be >= 1");
    if (n_max < 4) bad("ergodic.n_max", "horizon must be >= 4");
    if (grid_points < 1) bad("ergodic.grid_points", "must be positive");
    if (!valid_poly(poly))
        bad("ergodic.poly", "expected <coeff>*n^<d> with coeff 'sqrt2' or a decimal, d in [1,4]");

    if (grid_depth < 8 || grid_depth > 16) bad("whitney.grid_depth", "must be in [8, 16]");
    return issues;
}

void ExperimentConfig::check() const {
    auto issues = validate();
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::vector<std::string> issues;
    std::string section;

    std::stringstream ss(text);
    std::string raw;
    long line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                issues.push_back("line " + std::to_string(line_no) + ": unterminated section");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string path = section.empty() ? key : section + "." + key;

        auto bad_value = [&]() { issues.push_back(path + ": cannot parse value '" + value + "'"); };

        bool known = true;
        if (path == "experiment") cfg.experiment = value;
        else if (path == "seed") { if (!parse_number(value, cfg.seed)) bad_value(); }
        else if (path == "out") cfg.out_dir = value;
        else if (path == "threads") { if (!parse_number(value, cfg.threads)) bad_value(); }
        else if (path == "quick") { if (!parse_bool(value, cfg.quick)) bad_value(); }
        else if (path == "grid.log2_domain") { if (!parse_number(value, cfg.log2_domain)) bad_value(); }
        else if (path == "grid.log2_samples") { if (!parse_number(value, cfg.log2_samples)) bad_value(); }
        else if (path == "growth.trials") { if (!parse_number(value, cfg.trials)) bad_value(); }
        else if (path == "growth.sets") { if (!parse_number(value, cfg.sets)) bad_value(); }
        else if (path == "growth.n_list") { if (!parse_size_list(value, cfg.n_list)) bad_value(); }
        else if (path == "growth.lambda") { if (!parse_number(value, cfg.lambda)) bad_value(); }
        else if (path == "martingale.depth") { if (!parse_number(value, cfg.depth)) bad_value(); }
        else if (path == "projections.rho") { if (!parse_number(value, cfg.rho)) bad_value(); }
        else if (path == "multiplier.delta0") { if (!parse_number(value, cfg.delta0)) bad_value(); }
        else if (path == "multiplier.grid") { if (!parse_number(value, cfg.mult_grid)) bad_value(); }
        else if (path == "ergodic.R") { if (!parse_number(value, cfg.lacunary_r)) bad_value(); }
        else if (path == "ergodic.n_max") { if (!parse_number(value, cfg.n_max)) bad_value(); }
        else if (path == "ergodic.grid_points") { if (!parse_number(value, cfg.grid_points)) bad_value(); }
        else if (path == "ergodic.poly") cfg.poly = value;
        else if (path == "whitney.grid_depth") { if (!parse_number(value, cfg.grid_depth)) bad_value(); }
        else known = false;

        if (!known) issues.push_back(path + ": unknown key");
    }

    for (const auto& issue : cfg.validate()) issues.push_back(issue);
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"config file '" + path + "' cannot be read"});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string canonical_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "experiment=" << cfg.experiment << '\n'
        << "seed=" << cfg.seed << '\n'
        << "threads=" << cfg.threads << '\n'
        << "quick=" << (cfg.quick ? 1 : 0) << '\n'
        << "grid.log2_domain=" << cfg.log2_domain << '\n'
        << "grid.log2_samples=" << cfg.log2_samples << '\n'
        << "growth.trials=" << cfg.trials << '\n'
        << "growth.sets=" << cfg.sets << '\n';
    out << "growth.n_list=";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) out << (i ? "," : "") << cfg.n_list[i];
    out << '\n'
        << "growth.lambda=" << cfg.lambda << '\n'
        << "martingale.depth=" << cfg.depth << '\n'
        << "projections.rho=" << cfg.rho << '\n'
        << "multiplier.delta0=" << cfg.delta0 << '\n'
        << "multiplier.grid=" << cfg.mult_grid << '\n'
        << "ergodic.R=" << cfg.lacunary_r << '\n'
        << "ergodic.n_max=" << cfg.n_max << '\n'
        << "ergodic.grid_points=" << cfg.grid_points << '\n'
        << "ergodic.poly=" << cfg.poly << '\n'
        << "whitney.grid_depth=" << cfg.grid_depth << '\n';
    return out.str();
}

} // namespace oscillab
