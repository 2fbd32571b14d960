#include "envcf/family.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "envcf/errors.hpp"

namespace envcf {

namespace {

constexpr double kUnitNormTol = 1e-9;
constexpr double kOrthTol = 1e-8;  // |gamma'.nu| <= kOrthTol * (1 + ||gamma'||)

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw Error(errc::parse, "malformed number for " + what + ": '" + text + "'");
    return v;
}

long parse_long(const std::string& text, const std::string& what) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(errc::parse, "malformed integer for " + what + ": '" + text + "'");
    return v;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw Error(errc::parse,
                        "line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = trim(std::string_view(stripped).substr(0, eq));
        std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty())
            throw Error(errc::parse, "line " + std::to_string(line_no) + ": empty key");
        for (const auto& [k, v] : entries)
            if (k == key)
                throw Error(errc::parse,
                            "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    bool have_gx = false, have_gy = false, have_lambda = false, have_interval = false;
    ExprPtr nu_x, nu_y;

    auto parse_named_expr = [](const std::string& key, const std::string& value) {
        try {
            return parse_expr(value);
        } catch (const Error& e) {
            throw Error(e.code(), "key '" + key + "': " + e.what());
        }
    };

    for (const auto& [key, value] : parse_key_values(text)) {
        if (key == "gamma.x") {
            sc.family.gamma_x = parse_named_expr(key, value);
            have_gx = true;
        } else if (key == "gamma.y") {
            sc.family.gamma_y = parse_named_expr(key, value);
            have_gy = true;
        } else if (key == "lambda") {
            sc.family.lambda = parse_named_expr(key, value);
            have_lambda = true;
        } else if (key == "nu.x") {
            nu_x = parse_named_expr(key, value);
        } else if (key == "nu.y") {
            nu_y = parse_named_expr(key, value);
        } else if (key == "interval") {
            std::istringstream in(value);
            std::string a, b, rest;
            in >> a >> b;
            if (in >> rest || a.empty() || b.empty())
                throw Error(errc::parse, "interval must be two numbers: '" + value + "'");
            sc.family.interval.a = parse_double(a, "interval");
            sc.family.interval.b = parse_double(b, "interval");
            have_interval = true;
        } else if (key == "samples") {
            const long n = parse_long(value, "samples");
            if (n < 2) throw Error(errc::validate, "samples must be >= 2");
            sc.family.samples = static_cast<int>(n);
        } else if (key == "name") {
            sc.name = value;
        } else if (key == "render.stride") {
            const long n = parse_long(value, "render.stride");
            if (n < 1) throw Error(errc::validate, "render.stride must be >= 1");
            sc.render_stride = static_cast<int>(n);
        } else if (key == "render.margin") {
            sc.render_margin = parse_double(value, "render.margin");
        } else {
            throw Error(errc::parse, "unknown key '" + key + "'");
        }
    }

    if (!have_gx) throw Error(errc::parse, "missing required key 'gamma.x'");
    if (!have_gy) throw Error(errc::parse, "missing required key 'gamma.y'");
    if (!have_lambda) throw Error(errc::parse, "missing required key 'lambda'");
    if (!have_interval) throw Error(errc::parse, "missing required key 'interval'");
    if (static_cast<bool>(nu_x) != static_cast<bool>(nu_y))
        throw Error(errc::parse, "nu.x and nu.y must be supplied together");
    sc.family.nu_x = std::move(nu_x);
    sc.family.nu_y = std::move(nu_y);

    if (!(sc.family.interval.a < sc.family.interval.b))
        throw Error(errc::validate, "interval requires a < b");
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io, "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

// --------------------------------------------------------------------------

Vec2 Family::gauss(double) const {
    throw Error(errc::invalid_arg, "family has no Gauss map");
}

Vec2 Family::dgauss(double) const {
    throw Error(errc::invalid_arg, "family has no Gauss map");
}

SymbolicFamily::SymbolicFamily(CircleFamilySpec spec) : spec_(std::move(spec)) {
    if (spec_.samples < 2) throw Error(errc::validate, "samples must be >= 2");
    if (!(spec_.interval.a < spec_.interval.b))
        throw Error(errc::validate, "interval requires a < b");
    grid_ = SampleGrid{spec_.interval, spec_.samples};

    dgamma_x_ = diff_expr(spec_.gamma_x);
    dgamma_y_ = diff_expr(spec_.gamma_y);
    dlambda_ = diff_expr(spec_.lambda);
    if (spec_.has_gauss()) {
        dnu_x_ = diff_expr(spec_.nu_x);
        dnu_y_ = diff_expr(spec_.nu_y);
    }

    // Grid validation: every expression evaluable, lambda positive, and a
    // supplied Gauss map unit and orthogonal to dgamma. Violations are
    // collected so the error names the offending samples.
    std::vector<std::string> faults;
    auto note = [&faults](const std::string& msg) {
        if (faults.size() < 8) faults.push_back(msg);
    };
    int fault_count = 0;
    for (int k = 0; k < grid_.count; ++k) {
        const double t = grid_.t(k);
        bool bad = false;
        auto check_eval = [&](const ExprPtr& e, const char* what) -> double {
            const EvalResult r = eval_expr(*e, t);
            if (!r.ok()) {
                note(std::string(what) + " has a domain error in '" + to_string(*r.fault) +
                     "' at t = " + std::to_string(t));
                bad = true;
                return 0.0;
            }
            return r.value;
        };
        const double gx = check_eval(spec_.gamma_x, "gamma.x");
        const double gy = check_eval(spec_.gamma_y, "gamma.y");
        (void)gx;
        (void)gy;
        const double dgx = check_eval(dgamma_x_, "d/dt gamma.x");
        const double dgy = check_eval(dgamma_y_, "d/dt gamma.y");
        const double lam = check_eval(spec_.lambda, "lambda");
        check_eval(dlambda_, "d/dt lambda");
        if (!bad && !(lam > 0.0)) {
            note("lambda <= 0 at t = " + std::to_string(t) + " (lambda = " + std::to_string(lam) +
                 ")");
            bad = true;
        }
        if (!bad && spec_.has_gauss()) {
            const double nx = check_eval(spec_.nu_x, "nu.x");
            const double ny = check_eval(spec_.nu_y, "nu.y");
            check_eval(dnu_x_, "d/dt nu.x");
            check_eval(dnu_y_, "d/dt nu.y");
            if (!bad) {
                const Vec2 nu{nx, ny};
                const Vec2 dg{dgx, dgy};
                if (std::abs(nu.norm() - 1.0) > kUnitNormTol) {
                    note("nu is not unit at t = " + std::to_string(t) +
                         " (||nu|| = " + std::to_string(nu.norm()) + ")");
                    bad = true;
                } else if (std::abs(dg.dot(nu)) > kOrthTol * (1.0 + dg.norm())) {
                    note("frontal condition fails at t = " + std::to_string(t) +
                         " (gamma'.nu = " + std::to_string(dg.dot(nu)) + ")");
                    bad = true;
                }
            }
        }
        if (bad) ++fault_count;
    }
    if (fault_count > 0) {
        std::string msg = "family validation failed at " + std::to_string(fault_count) + " of " +
                          std::to_string(grid_.count) + " samples:";
        for (const auto& f : faults) msg += "\n  " + f;
        throw Error(errc::validate, msg);
    }
}

Vec2 SymbolicFamily::gamma(double t) const {
    return {eval_or_throw(*spec_.gamma_x, t), eval_or_throw(*spec_.gamma_y, t)};
}

Vec2 SymbolicFamily::dgamma(double t) const {
    return {eval_or_throw(*dgamma_x_, t), eval_or_throw(*dgamma_y_, t)};
}

double SymbolicFamily::lambda(double t) const { return eval_or_throw(*spec_.lambda, t); }

double SymbolicFamily::dlambda(double t) const { return eval_or_throw(*dlambda_, t); }

Vec2 SymbolicFamily::gauss(double t) const {
    if (!spec_.has_gauss()) return Family::gauss(t);
    return {eval_or_throw(*spec_.nu_x, t), eval_or_throw(*spec_.nu_y, t)};
}

Vec2 SymbolicFamily::dgauss(double t) const {
    if (!spec_.has_gauss()) return Family::dgauss(t);
    return {eval_or_throw(*dnu_x_, t), eval_or_throw(*dnu_y_, t)};
}

std::shared_ptr<const SymbolicFamily> build_family(const Scenario& scenario,
                                                   int samples_override) {
    CircleFamilySpec spec = scenario.family;
    if (samples_override > 0) spec.samples = samples_override;
    return std::make_shared<const SymbolicFamily>(std::move(spec));
}

}  // namespace envcf
