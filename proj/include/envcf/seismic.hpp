#pragma once

// Seismic-survey front end: sensor/arrival records -> circle family with
// lambda = c * tau -> recovered orthotomic W (envelope branch on the
// configured side) -> reflector by mirror geometry.

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "envcf/discriminant.hpp"
#include "envcf/envelope.hpp"
#include "envcf/family.hpp"
#include "envcf/spline.hpp"

namespace envcf {

enum class ReflectorSide : unsigned char { lower, upper };

struct SurveyData {
    std::vector<double> t;
    std::vector<Vec2> sensor;
    std::vector<double> arrival;  // seconds, > 0
    Vec2 source;                  // explosion point A
    double speed = 0.0;           // m/s, > 0
    ReflectorSide side = ReflectorSide::lower;

    int rows() const { return static_cast<int>(t.size()); }
};

// CSV with required header "t,sensor_x,sensor_y,arrival_s". Rejects
// non-positive arrivals, duplicate or non-monotone t (first offending line
// is named). Source/speed/side come from config, not the CSV.
SurveyData ingest_survey(std::istream& csv, Vec2 source, double speed, ReflectorSide side);
SurveyData ingest_survey_file(const std::string& path, Vec2 source, double speed,
                              ReflectorSide side);

// Sampled family over the open record span: cubic fits through the exact
// records for the sensor curve, lambda(t) = speed * arrival(t).
class SurveyFamily : public Family {
public:
    SurveyFamily(const SurveyData& data, int samples);

    Vec2 gamma(double t) const override;
    Vec2 dgamma(double t) const override;
    double lambda(double t) const override;
    double dlambda(double t) const override;

private:
    CubicSpline sensor_x_, sensor_y_, radius_;
};

struct ReflectorPoint {
    double t = 0.0;
    Vec2 m;
    bool flagged = false;  // bisector intersection fell outside segment f->gamma
};

struct SeismicResult {
    std::shared_ptr<SurveyFamily> family;
    FrontalData frontal;
    CreativityReport report;
    std::vector<EnvelopeBranch> branches;
    int selected = -1;  // index into branches of the recovered W
    std::vector<ReflectorPoint> reflector;

    const EnvelopeBranch& orthotomic() const { return branches[selected]; }
};

// Runs the creativity/envelope pipeline on the survey family and selects the
// branch on the configured side of the sensor line. Throws
// Error(errc::not_creative) with margin diagnostics on inconsistent times.
SeismicResult recover_orthotomic(const SurveyData& data, int samples = 2001,
                                 bool reconstruct = true);

// m(t) = intersection of segment f(t)->gamma(t) with the perpendicular
// bisector of {A, f(t)}. Throws Error(errc::degenerate) when f(t) == A.
std::vector<ReflectorPoint> reconstruct_reflector(const EnvelopeBranch& w, Vec2 source,
                                                  const FrontalData& frontal);

}  // namespace envcf
