#pragma once

// Moving frame along the center curve: Gauss map nu (supplied or tracked),
// mu = J(nu), and the curvature pair (ell, beta). beta vanishes exactly at
// singular points of gamma; those samples are flagged.

#include <string>
#include <vector>

#include "envcf/family.hpp"
#include "envcf/geometry.hpp"

namespace envcf {

struct FrontalData {
    SampleGrid grid;
    std::vector<double> t;
    std::vector<Vec2> gamma;
    std::vector<Vec2> dgamma;
    std::vector<Vec2> nu;
    std::vector<Vec2> mu;
    std::vector<double> ell;      // nu' . mu
    std::vector<double> beta;     // gamma' . mu
    std::vector<double> lambda;
    std::vector<double> dlambda;
    std::vector<char> singular;   // ||gamma'|| <= eps_sing

    // Relative singularity cutoff: 1e-8 * (1 + max ||gamma'|| over the grid).
    double eps_sing = 0.0;
    bool gauss_symbolic = false;
    int first_regular = -1;       // -1: every sample singular
    std::vector<std::string> warnings;

    int size() const { return static_cast<int>(t.size()); }
};

// Builds the frame over the family grid. With no supplied Gauss map the
// frame is tracked: nu := -J(gamma'/||gamma'||) at the first regular sample,
// then the sign of +-J(gamma'/||gamma'||) maximizing continuity with the
// previous sample; interior singular runs are bridged by shortest-arc
// interpolation between their regular neighbours, boundary runs carry.
// Throws Error(errc::validate) when gamma is constant and no nu was given.
FrontalData build_frontal(const Family& family);

// Unit-normal candidates at one parameter, independent of tracking state.
// Returns false at a singular point.
bool frame_at(const Family& family, double t, double eps_sing, Vec2* nu_out, Vec2* mu_out);

}  // namespace envcf
