#pragma once

// CSV and SVG emitters. CSV: UTF-8, header row, '.' decimal separator,
// 9 significant digits, rows ordered by t, byte-identical across runs for
// identical inputs. SVG: one self-contained file with background circles,
// branch curves, dashed center curve and discriminant markers.

#include <optional>
#include <string>
#include <vector>

#include "envcf/creativity.hpp"
#include "envcf/discriminant.hpp"
#include "envcf/envelope.hpp"
#include "envcf/seismic.hpp"

namespace envcf {

// Locale-independent "%.9g"-style formatting used by every CSV writer.
std::string format_sig9(double v);

std::string envelope_csv(const std::vector<EnvelopeBranch>& branches);
std::string creativity_csv(const CreativityReport& report, const FrontalData& frontal);
std::string frontal_csv(const FrontalData& frontal);
std::string discriminant_csv(const std::vector<DiscriminantSlice>& slices);
std::string e1_csv(const E1Result& result);
std::string orthotomic_csv(const EnvelopeBranch& w);
std::string reflector_csv(const std::vector<ReflectorPoint>& reflector);

struct SvgOptions {
    int circle_stride = 0;    // 0: pick ~50 circles over the grid
    double margin = 0.05;     // viewport margin fraction of the bounding box
    double width = 720.0;     // pixel width; height follows the aspect ratio
};

struct SvgScene {
    struct Circle {
        Vec2 center;
        double radius;
    };
    struct Path {
        std::vector<Vec2> points;
        std::string stroke;
        bool dashed = false;
    };
    struct Marker {
        Vec2 at;
        std::string fill;
    };

    std::vector<Circle> circles;
    std::vector<Path> paths;
    std::vector<Marker> markers;

    void add_family_circles(const FrontalData& frontal, int stride);
    void add_center_curve(const FrontalData& frontal);
    void add_branches(const std::vector<EnvelopeBranch>& branches);
    void add_slices(const std::vector<DiscriminantSlice>& slices);

    bool empty() const { return circles.empty() && paths.empty() && markers.empty(); }
};

// Throws Error(errc::invalid_arg) when the scene has no drawable layer.
std::string render_svg(const SvgScene& scene, const SvgOptions& options = {});

void write_file(const std::string& path, const std::string& content);

}  // namespace envcf
