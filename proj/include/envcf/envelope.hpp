#pragma once

// Creator fields and envelope branches: nu_tilde = -cos(theta) mu +- sin(theta) nu,
// f = gamma + lambda nu_tilde, plus the residual verification of the
// envelope definition (tangency and membership).

#include <cstdint>
#include <string>
#include <vector>

#include "envcf/creativity.hpp"
#include "envcf/frontal.hpp"

namespace envcf {

enum class BranchLabel : unsigned char { plus, minus, forced, randomized };

const char* to_string(BranchLabel label);

struct EnvelopeBranch {
    BranchLabel label = BranchLabel::plus;
    int random_index = 0;             // 1-based for randomized branches
    std::vector<double> t;
    std::vector<double> cos_theta;
    std::vector<Vec2> creator;        // nu_tilde, unit
    std::vector<Vec2> point;          // f = gamma + lambda nu_tilde
    std::vector<int> contact_samples; // |cos(theta)| = 1: branches touch here
    std::vector<std::string> warnings;

    std::string name() const;
    int size() const { return static_cast<int>(t.size()); }
};

struct CreatorOptions {
    int randomized = 0;          // extra creators on beta == 0 subintervals
    std::uint64_t seed = 0x5eed5eedULL;
};

// One branch when the classification is Unique (forced), otherwise the
// plus/minus pair, plus any requested randomized creators that differ from
// the plus branch only on unconstrained runs (matched at run endpoints).
// cos(theta) at unconstrained samples inside a creative family is filled by
// linear interpolation from the nearest solvable neighbours (0 if none).
// Throws Error(errc::not_creative) on a NotCreative report.
std::vector<EnvelopeBranch> creator_branches(const CreativityReport& report,
                                             const FrontalData& frontal,
                                             const CreatorOptions& options = {});

// Fills branch.point from the creator samples.
void build_envelope(EnvelopeBranch& branch, const FrontalData& frontal);

// Envelope point(s) at an arbitrary parameter (not grid-bound); empty when
// the creative condition has no solution at t.
std::vector<Vec2> envelope_points_at(const Family& family, const FrontalData& frontal, double t);

struct ResidualReport {
    double r1 = 0.0;        // max |f'(t) . (f(t)-gamma(t))|, f' central-differenced
    double r2 = 0.0;        // max | ||f-gamma|| - lambda |
    double scale = 1.0;     // (1 + max ||f'||)(1 + max lambda)
    double tol1 = 1e-6;     // pass iff r1 <= tol1 * scale
    double tol2 = 1e-9;     // pass iff r2 <= tol2
    double r1_argmax_t = 0.0;
    double r2_argmax_t = 0.0;
    bool pass = false;
};

ResidualReport verify_envelope(const EnvelopeBranch& branch, const FrontalData& frontal,
                               double tol1 = 1e-6, double tol2 = 1e-9);

// r1 budget for a given grid size: 1e-6 is pinned at 2001 samples and the
// central-difference residual is second order in the spacing, so coarser
// grids get the quadratically scaled allowance.
double residual_budget(int samples);

}  // namespace envcf
