#pragma once

// Circle families: a center curve gamma, a positive radius function lambda
// and an optional Gauss map nu, all over an open parameter interval.
// The abstract Family interface serves both the symbolic route (scenario
// expressions) and sampled routes (survey splines).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envcf/expr.hpp"
#include "envcf/geometry.hpp"

namespace envcf {

struct CircleFamilySpec {
    ExprPtr gamma_x, gamma_y;
    ExprPtr lambda;
    ExprPtr nu_x, nu_y;  // both set or both null
    Interval interval;
    int samples = 2001;

    bool has_gauss() const { return nu_x != nullptr; }
};

// Evaluation interface for a circle family; derivatives are exact
// (symbolic or spline coefficients), never finite differences.
class Family {
public:
    virtual ~Family() = default;

    const SampleGrid& grid() const { return grid_; }
    Interval interval() const { return grid_.interval; }
    int samples() const { return grid_.count; }

    virtual Vec2 gamma(double t) const = 0;
    virtual Vec2 dgamma(double t) const = 0;
    virtual double lambda(double t) const = 0;
    virtual double dlambda(double t) const = 0;

    virtual bool has_gauss() const { return false; }
    virtual Vec2 gauss(double /*t*/) const;   // throws unless has_gauss()
    virtual Vec2 dgauss(double /*t*/) const;  // throws unless has_gauss()

protected:
    SampleGrid grid_;
};

class SymbolicFamily : public Family {
public:
    // Validates every CircleFamilySpec invariant on the sample grid:
    // lambda > 0, unit nu, orthogonality of nu to dgamma. Throws
    // Error(errc::validate) listing the offending samples.
    explicit SymbolicFamily(CircleFamilySpec spec);

    const CircleFamilySpec& spec() const { return spec_; }

    Vec2 gamma(double t) const override;
    Vec2 dgamma(double t) const override;
    double lambda(double t) const override;
    double dlambda(double t) const override;
    bool has_gauss() const override { return spec_.has_gauss(); }
    Vec2 gauss(double t) const override;
    Vec2 dgauss(double t) const override;

private:
    CircleFamilySpec spec_;
    ExprPtr dgamma_x_, dgamma_y_, dlambda_, dnu_x_, dnu_y_;
};

// ---------------------------------------------------------------------------
// Scenario configs: UTF-8 "key = value" lines, '#' comments. Keys:
//   gamma.x, gamma.y, lambda      expressions in t (required)
//   nu.x, nu.y                    optional Gauss map expressions (pair)
//   interval = "a b"              open interval endpoints (required)
//   samples = N                   grid size (default 2001)
//   name                          free-form label
//   render.stride                 background-circle stride for SVG output
//   render.margin                 viewport margin fraction (default 0.05)

struct Scenario {
    std::string name;
    CircleFamilySpec family;
    int render_stride = 0;        // 0: pick from sample count
    double render_margin = 0.05;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

// Scenario -> validated family. `samples_override > 0` replaces the
// scenario's grid size (CLI --samples).
std::shared_ptr<const SymbolicFamily> build_family(const Scenario& scenario,
                                                   int samples_override = 0);

// Shared key=value reader for scenario and seismic config files.
// Preserves first-seen order of keys; rejects duplicate keys.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

}  // namespace envcf
