#include "envcf/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "envcf/errors.hpp"

namespace envcf {

std::string format_sig9(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

void append_row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const std::string& c : cells) {
        if (!first) out += ',';
        out += c;
        first = false;
    }
    out += '\n';
}

std::string fmt(double v) { return format_sig9(v); }

}  // namespace

std::string envelope_csv(const std::vector<EnvelopeBranch>& branches) {
    std::string out = "t,x,y,branch\n";
    if (branches.empty()) return out;
    const int n = branches.front().size();
    for (int k = 0; k < n; ++k)
        for (const EnvelopeBranch& br : branches)
            append_row(out, {fmt(br.t[k]), fmt(br.point[k].x), fmt(br.point[k].y), br.name()});
    return out;
}

std::string creativity_csv(const CreativityReport& report, const FrontalData& frontal) {
    std::string out = "t,status,cos_theta,margin\n";
    for (int k = 0; k < report.size(); ++k)
        append_row(out, {fmt(frontal.t[k]), to_string(report.status[k]),
                         fmt(report.cos_theta[k]), fmt(report.margin[k])});
    return out;
}

std::string frontal_csv(const FrontalData& frontal) {
    std::string out = "t,nu_x,nu_y,ell,beta,singular\n";
    for (int k = 0; k < frontal.size(); ++k)
        append_row(out, {fmt(frontal.t[k]), fmt(frontal.nu[k].x), fmt(frontal.nu[k].y),
                         fmt(frontal.ell[k]), fmt(frontal.beta[k]),
                         frontal.singular[k] ? "1" : "0"});
    return out;
}

std::string discriminant_csv(const std::vector<DiscriminantSlice>& slices) {
    // FullCircle rows carry center in (x1,y1) and radius in x2.
    std::string out = "t,kind,x1,y1,x2,y2\n";
    for (const DiscriminantSlice& s : slices) {
        switch (s.kind) {
            case SliceKind::empty:
                append_row(out, {fmt(s.t), to_string(s.kind), "", "", "", ""});
                break;
            case SliceKind::tangent:
                append_row(out, {fmt(s.t), to_string(s.kind), fmt(s.p1.x), fmt(s.p1.y), "", ""});
                break;
            case SliceKind::pair:
                append_row(out, {fmt(s.t), to_string(s.kind), fmt(s.p1.x), fmt(s.p1.y),
                                 fmt(s.p2.x), fmt(s.p2.y)});
                break;
            case SliceKind::full_circle:
                append_row(out, {fmt(s.t), to_string(s.kind), fmt(s.center.x), fmt(s.center.y),
                                 fmt(s.radius), ""});
                break;
        }
    }
    return out;
}

std::string e1_csv(const E1Result& result) {
    std::string out = "eps,direction,side,x,y,distance\n";
    int side = 0;
    for (const E1Track& track : result.tracks) {
        const std::string side_name = "track" + std::to_string(side++);
        for (const E1Step& s : track.steps)
            append_row(out, {fmt(s.eps), track.direction > 0 ? "+" : "-", side_name,
                             fmt(s.point.x), fmt(s.point.y), fmt(s.distance)});
    }
    return out;
}

std::string orthotomic_csv(const EnvelopeBranch& w) {
    std::string out = "t,wx,wy\n";
    for (int k = 0; k < w.size(); ++k)
        append_row(out, {fmt(w.t[k]), fmt(w.point[k].x), fmt(w.point[k].y)});
    return out;
}

std::string reflector_csv(const std::vector<ReflectorPoint>& reflector) {
    std::string out = "t,mx,my,flagged\n";
    for (const ReflectorPoint& r : reflector)
        append_row(out, {fmt(r.t), fmt(r.m.x), fmt(r.m.y), r.flagged ? "1" : "0"});
    return out;
}

// --------------------------------------------------------------------------

void SvgScene::add_family_circles(const FrontalData& frontal, int stride) {
    if (stride < 1) stride = std::max(1, frontal.size() / 50);
    for (int k = 0; k < frontal.size(); k += stride)
        circles.push_back({frontal.gamma[k], frontal.lambda[k]});
}

void SvgScene::add_center_curve(const FrontalData& frontal) {
    Path p;
    p.points = frontal.gamma;
    p.stroke = "#222222";
    p.dashed = true;
    paths.push_back(std::move(p));
}

void SvgScene::add_branches(const std::vector<EnvelopeBranch>& branches) {
    static const char* palette[] = {"#c0392b", "#2d6fb4", "#7d3c98", "#1e8449"};
    int i = 0;
    for (const EnvelopeBranch& br : branches) {
        const char* color = palette[i++ % 4];
        // A point envelope (e.g. the unique-envelope case collapsing to one
        // point) renders as a marker; a path of identical points is invisible.
        bool degenerate = true;
        for (const Vec2& p : br.point)
            if (distance(p, br.point.front()) > 1e-12) {
                degenerate = false;
                break;
            }
        if (degenerate && !br.point.empty()) {
            markers.push_back({br.point.front(), color});
            continue;
        }
        Path p;
        p.points = br.point;
        p.stroke = color;
        paths.push_back(std::move(p));
    }
}

void SvgScene::add_slices(const std::vector<DiscriminantSlice>& slices) {
    for (const DiscriminantSlice& s : slices) {
        if (s.kind == SliceKind::tangent || s.kind == SliceKind::pair)
            markers.push_back({s.p1, "#b03a2e"});
        if (s.kind == SliceKind::pair) markers.push_back({s.p2, "#1f618d"});
        if (s.kind == SliceKind::full_circle) circles.push_back({s.center, s.radius});
    }
}

namespace {

std::string svg_num(double v) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 7);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

std::string render_svg(const SvgScene& scene, const SvgOptions& options) {
    if (scene.empty()) throw Error(errc::invalid_arg, "SVG scene has no drawable layer");

    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_y;
    auto grow = [&](Vec2 p, double pad) {
        min_x = std::min(min_x, p.x - pad);
        max_x = std::max(max_x, p.x + pad);
        min_y = std::min(min_y, p.y - pad);
        max_y = std::max(max_y, p.y + pad);
    };
    for (const auto& c : scene.circles) grow(c.center, c.radius);
    for (const auto& p : scene.paths)
        for (const Vec2& q : p.points) grow(q, 0.0);
    for (const auto& m : scene.markers) grow(m.at, 0.0);

    const double span_x = std::max(max_x - min_x, 1e-9);
    const double span_y = std::max(max_y - min_y, 1e-9);
    const double margin = options.margin * std::max(span_x, span_y);
    min_x -= margin;
    max_x += margin;
    min_y -= margin;
    max_y += margin;

    // Math y grows upward; SVG y grows downward. Emit flipped y directly.
    const double width = max_x - min_x;
    const double height = max_y - min_y;
    const double stroke = 0.0025 * std::max(width, height);
    auto X = [&](double x) { return svg_num(x); };
    auto Y = [&](double y) { return svg_num(-y); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           svg_num(options.width) + "\" height=\"" +
           svg_num(options.width * height / width) + "\" viewBox=\"" + svg_num(min_x) + " " +
           svg_num(-max_y) + " " + svg_num(width) + " " + svg_num(height) + "\">\n";
    out += "<g fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";

    for (const auto& c : scene.circles)
        out += "<circle cx=\"" + X(c.center.x) + "\" cy=\"" + Y(c.center.y) + "\" r=\"" +
               svg_num(c.radius) + "\" stroke=\"#bbbbbb\" stroke-width=\"" +
               svg_num(stroke * 0.6) + "\"/>\n";

    for (const auto& p : scene.paths) {
        if (p.points.empty()) continue;
        std::string d = "M " + X(p.points[0].x) + " " + Y(p.points[0].y);
        for (std::size_t i = 1; i < p.points.size(); ++i)
            d += " L " + X(p.points[i].x) + " " + Y(p.points[i].y);
        out += "<path d=\"" + d + "\" stroke=\"" + p.stroke + "\" stroke-width=\"" +
               svg_num(stroke) + "\"";
        if (p.dashed)
            out += " stroke-dasharray=\"" + svg_num(4 * stroke) + " " + svg_num(3 * stroke) + "\"";
        out += "/>\n";
    }

    for (const auto& m : scene.markers)
        out += "<circle cx=\"" + X(m.at.x) + "\" cy=\"" + Y(m.at.y) + "\" r=\"" +
               svg_num(1.6 * stroke) + "\" fill=\"" + m.fill + "\" stroke=\"none\"/>\n";

    out += "</g>\n</svg>\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(errc::io, "failed writing '" + path + "'");
}

}  // namespace envcf
