#include "envcf/seismic.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "envcf/errors.hpp"

namespace envcf {

namespace {

constexpr char kHeader[] = "t,sensor_x,sensor_y,arrival_s";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double field_double(const std::string& raw, int line_no, const char* what) {
    const std::string text = strip(raw);
    double v = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(errc::parse, "survey line " + std::to_string(line_no) + ": malformed " +
                                     what + " '" + raw + "'");
    return v;
}

}  // namespace

SurveyData ingest_survey(std::istream& csv, Vec2 source, double speed, ReflectorSide side) {
    if (!(speed > 0.0)) throw Error(errc::validate, "speed must be positive");
    SurveyData data;
    data.source = source;
    data.speed = speed;
    data.side = side;

    std::string line;
    int line_no = 0;
    if (!std::getline(csv, line)) throw Error(errc::parse, "survey CSV is empty");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strip(line) != kHeader)
        throw Error(errc::parse, std::string("survey CSV must start with header '") + kHeader +
                                     "', got '" + line + "'");

    while (std::getline(csv, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4)
            throw Error(errc::parse, "survey line " + std::to_string(line_no) + ": expected 4 "
                                     "fields, got " + std::to_string(fields.size()));
        const double t = field_double(fields[0], line_no, "t");
        const double sx = field_double(fields[1], line_no, "sensor_x");
        const double sy = field_double(fields[2], line_no, "sensor_y");
        const double arrival = field_double(fields[3], line_no, "arrival_s");
        if (!(arrival > 0.0))
            throw Error(errc::validate,
                        "survey line " + std::to_string(line_no) + ": arrival must be positive");
        if (!data.t.empty()) {
            if (t == data.t.back())
                throw Error(errc::validate,
                            "survey line " + std::to_string(line_no) + ": duplicate t = " +
                                std::to_string(t));
            if (t < data.t.back())
                throw Error(errc::validate, "survey line " + std::to_string(line_no) +
                                                ": t not strictly increasing");
        }
        data.t.push_back(t);
        data.sensor.push_back({sx, sy});
        data.arrival.push_back(arrival);
    }
    if (data.rows() < 2) throw Error(errc::validate, "survey needs at least 2 records");
    return data;
}

SurveyData ingest_survey_file(const std::string& path, Vec2 source, double speed,
                              ReflectorSide side) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io, "cannot open survey file '" + path + "'");
    return ingest_survey(in, source, speed, side);
}

SurveyFamily::SurveyFamily(const SurveyData& data, int samples) {
    if (samples < 2) throw Error(errc::validate, "samples must be >= 2");
    std::vector<double> xs(data.sensor.size()), ys(data.sensor.size()),
        radii(data.arrival.size());
    for (std::size_t i = 0; i < data.sensor.size(); ++i) {
        xs[i] = data.sensor[i].x;
        ys[i] = data.sensor[i].y;
        radii[i] = data.speed * data.arrival[i];  // lambda = c * tau
    }
    sensor_x_ = CubicSpline(data.t, xs);
    sensor_y_ = CubicSpline(data.t, ys);
    radius_ = CubicSpline(data.t, radii);
    grid_ = SampleGrid{Interval{data.t.front(), data.t.back()}, samples};
}

Vec2 SurveyFamily::gamma(double t) const { return {sensor_x_.value(t), sensor_y_.value(t)}; }

Vec2 SurveyFamily::dgamma(double t) const {
    return {sensor_x_.derivative(t), sensor_y_.derivative(t)};
}

double SurveyFamily::lambda(double t) const { return radius_.value(t); }

double SurveyFamily::dlambda(double t) const { return radius_.derivative(t); }

std::vector<ReflectorPoint> reconstruct_reflector(const EnvelopeBranch& w, Vec2 source,
                                                  const FrontalData& frontal) {
    std::vector<ReflectorPoint> out;
    out.reserve(w.size());
    for (int k = 0; k < w.size(); ++k) {
        const Vec2 f = w.point[k];
        const Vec2 g = frontal.gamma[k];
        const Vec2 axis = f - source;  // normal of the perpendicular bisector
        const double axis_norm = axis.norm();
        if (axis_norm <= 1e-12 * (1.0 + f.norm() + source.norm()))
            throw Error(errc::degenerate, "envelope meets the source at t = " +
                                              std::to_string(w.t[k]) +
                                              "; perpendicular bisector undefined");
        const Vec2 mid = 0.5 * (source + f);
        const double denom = (g - f).dot(axis);
        ReflectorPoint rp;
        rp.t = w.t[k];
        if (denom == 0.0) {
            // Segment parallel to the bisector: no usable intersection.
            rp.m = f;
            rp.flagged = true;
        } else {
            const double s = (mid - f).dot(axis) / denom;
            rp.m = f + s * (g - f);
            rp.flagged = !(s >= 0.0 && s <= 1.0);
        }
        out.push_back(rp);
    }
    return out;
}

SeismicResult recover_orthotomic(const SurveyData& data, int samples, bool reconstruct) {
    SeismicResult result;
    result.family = std::make_shared<SurveyFamily>(data, samples);

    // Degenerate survey: all sensors at one point. beta == 0 everywhere, so
    // either every creator works (uncountably many envelopes, no canonical
    // W) or none does (concentric circles with changing radii).
    {
        const SampleGrid& grid = result.family->grid();
        double max_speed = 0.0, max_dlam = 0.0;
        for (int k = 0; k < grid.count; ++k) {
            max_speed = std::max(max_speed, result.family->dgamma(grid.t(k)).norm());
            max_dlam = std::max(max_dlam, std::abs(result.family->dlambda(grid.t(k))));
        }
        if (max_speed <= 1e-8) {
            if (max_dlam <= 1e-8)
                throw Error(errc::degenerate,
                            "sensors are concentric: the family creates uncountably many "
                            "envelopes (beta == 0 everywhere) and no canonical W exists");
            throw Error(errc::not_creative,
                        "sensors are concentric with changing radii: the family is not "
                        "creative and recovers no wavefront");
        }
    }

    result.frontal = build_frontal(*result.family);
    result.report = classify_family(result.frontal);
    if (!result.report.creative()) {
        const int k = result.report.witness_index;
        std::ostringstream msg;
        msg << "survey times are inconsistent with a wavefront: creative condition fails at t = "
            << result.report.witness_t << " (|dlambda| = "
            << std::abs(result.frontal.dlambda[k]) << " > |beta| = "
            << std::abs(result.frontal.beta[k]) << "); check arrival times near that record";
        throw Error(errc::not_creative, msg.str());
    }
    result.branches = creator_branches(result.report, result.frontal);
    for (EnvelopeBranch& br : result.branches) build_envelope(br, result.frontal);

    // Side policy: mean signed distance from the least-squares sensor line,
    // with the line normal oriented to the upper half-plane.
    const int n = result.frontal.size();
    Vec2 centroid{0, 0};
    for (const Vec2& g : result.frontal.gamma) centroid = centroid + g;
    centroid = centroid / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const Vec2& g : result.frontal.gamma) {
        const Vec2 d = g - centroid;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    // Principal direction of the sensor cloud; normal = J(direction).
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    Vec2 line_dir{std::cos(theta), std::sin(theta)};
    Vec2 normal = rotate90(line_dir);
    if (normal.y < 0.0) normal = -normal;

    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < result.branches.size(); ++b) {
        double mean = 0.0;
        for (const Vec2& p : result.branches[b].point) mean += (p - centroid).dot(normal);
        mean /= n;
        const double score = data.side == ReflectorSide::lower ? -mean : mean;
        if (score > best_score) {
            best_score = score;
            result.selected = static_cast<int>(b);
        }
    }

    if (reconstruct)
        result.reflector =
            reconstruct_reflector(result.orthotomic(), data.source, result.frontal);
    return result;
}

}  // namespace envcf
