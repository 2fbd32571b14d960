#pragma once

// Pointwise creative condition dlambda = beta * cos(theta) and the
// envelope-count classification. Density of a set over an open interval
// is undecidable from finitely many samples; fixed-width windows are the
// declared proxy and Ambiguous is surfaced rather than guessed.

#include <string>
#include <vector>

#include "envcf/frontal.hpp"

namespace envcf {

enum class PointStatus : unsigned char {
    solvable,       // |dlambda| <= |beta|, cos(theta) = dlambda / beta
    unconstrained,  // beta ~ 0 and dlambda ~ 0: any unit creator works
    no_solution,    // |dlambda| > |beta|: no unit creator exists
};

enum class FamilyClass : unsigned char {
    not_creative,
    unique_envelope,
    exactly_two,
    uncountably_many,
    ambiguous,
};

const char* to_string(PointStatus s);
const char* to_string(FamilyClass c);

struct CreativityOptions {
    double eps_beta = -1.0;     // <= 0: use the frontal eps_sing
    double eps_tan = 1e-6;      // relative tangency band ||dl|-|b|| <= eps_tan*|b|
    double delta_strict = 1e-6; // strict band |dl| < (1-delta)*|b|
    int windows = 64;           // density-proxy window count
};

struct WindowDiag {
    double t_lo = 0.0, t_hi = 0.0;
    int samples = 0;
    bool has_regular = false;   // some sample with |beta| > eps_beta
    bool has_tangency = false;  // regular sample with |dlambda| = |beta| within band
    bool has_strict = false;    // sample with |dlambda| < (1-delta)|beta|
};

struct CreativityReport {
    FamilyClass classification = FamilyClass::ambiguous;
    std::vector<PointStatus> status;
    std::vector<double> cos_theta;  // clamped to [-1,1]; 0 at non-solvable samples
    std::vector<double> margin;     // |beta| - |dlambda|
    double eps_beta = 0.0;
    int witness_index = -1;         // first NoSolution sample (NotCreative)
    double witness_t = 0.0;
    std::vector<WindowDiag> windows;

    bool creative() const { return classification != FamilyClass::not_creative; }
    int size() const { return static_cast<int>(status.size()); }
};

// One sample of the creative condition. cos_out receives the clamped
// cos(theta) when solvable (the clamp band on |cos| is 1e-9 so roundoff at
// exact tangency never reports a spurious NoSolution).
PointStatus pointwise_creative(double dlambda, double beta, double eps_beta, double* cos_out);

// Family classification from the pointwise statuses:
//   any NoSolution               -> NotCreative (smallest witness t)
//   some window without beta!=0  -> UncountablyMany
//   tangency in every window     -> Unique
//   strict sample exists         -> ExactlyTwo
//   otherwise                    -> Ambiguous (reported, not an error)
CreativityReport classify_family(const FrontalData& frontal, const CreativityOptions& options = {});

// Structured text report (status line plus per-window table).
std::string report_text(const CreativityReport& report, const FrontalData& frontal);

}  // namespace envcf
