#include "envcf/creativity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "envcf/errors.hpp"

namespace envcf {

namespace {

constexpr double kCosClampBand = 1e-9;  // |cos| in (1, 1+band] clamps instead of failing

}  // namespace

const char* to_string(PointStatus s) {
    switch (s) {
        case PointStatus::solvable:
            return "Solvable";
        case PointStatus::unconstrained:
            return "Unconstrained";
        case PointStatus::no_solution:
            return "NoSolution";
    }
    return "?";
}

const char* to_string(FamilyClass c) {
    switch (c) {
        case FamilyClass::not_creative:
            return "NotCreative";
        case FamilyClass::unique_envelope:
            return "Unique";
        case FamilyClass::exactly_two:
            return "ExactlyTwo";
        case FamilyClass::uncountably_many:
            return "UncountablyMany";
        case FamilyClass::ambiguous:
            return "Ambiguous";
    }
    return "?";
}

PointStatus pointwise_creative(double dlambda, double beta, double eps_beta, double* cos_out) {
    if (cos_out) *cos_out = 0.0;
    if (std::abs(beta) <= eps_beta)
        return std::abs(dlambda) <= eps_beta ? PointStatus::unconstrained
                                             : PointStatus::no_solution;
    const double c = dlambda / beta;
    if (std::abs(c) > 1.0 + kCosClampBand) return PointStatus::no_solution;
    if (cos_out) *cos_out = std::clamp(c, -1.0, 1.0);
    return PointStatus::solvable;
}

CreativityReport classify_family(const FrontalData& frontal, const CreativityOptions& options) {
    const int n = frontal.size();
    CreativityReport rep;
    rep.eps_beta = options.eps_beta > 0.0 ? options.eps_beta : frontal.eps_sing;
    rep.status.resize(n);
    rep.cos_theta.assign(n, 0.0);
    rep.margin.resize(n);

    for (int k = 0; k < n; ++k) {
        rep.status[k] = pointwise_creative(frontal.dlambda[k], frontal.beta[k], rep.eps_beta,
                                           &rep.cos_theta[k]);
        rep.margin[k] = std::abs(frontal.beta[k]) - std::abs(frontal.dlambda[k]);
        if (rep.status[k] == PointStatus::no_solution && rep.witness_index < 0) {
            rep.witness_index = k;
            rep.witness_t = frontal.t[k];
        }
    }

    // NoSolution anywhere kills the family: the creative identity must hold
    // at every parameter for an envelope to exist.
    if (rep.witness_index >= 0) {
        rep.classification = FamilyClass::not_creative;
        return rep;
    }

    const int n_windows = std::max(1, std::min(options.windows, n));
    rep.windows.assign(n_windows, WindowDiag{});
    const Interval I = frontal.grid.interval;
    for (int w = 0; w < n_windows; ++w) {
        rep.windows[w].t_lo = I.a + I.width() * w / n_windows;
        rep.windows[w].t_hi = I.a + I.width() * (w + 1) / n_windows;
    }
    bool any_strict = false;
    for (int k = 0; k < n; ++k) {
        int w = static_cast<int>((frontal.t[k] - I.a) / I.width() * n_windows);
        w = std::clamp(w, 0, n_windows - 1);
        WindowDiag& diag = rep.windows[w];
        ++diag.samples;
        const double abs_beta = std::abs(frontal.beta[k]);
        const double abs_dl = std::abs(frontal.dlambda[k]);
        if (abs_beta > rep.eps_beta) {
            diag.has_regular = true;
            if (std::abs(abs_dl - abs_beta) <= options.eps_tan * abs_beta)
                diag.has_tangency = true;
        }
        if (abs_dl < (1.0 - options.delta_strict) * abs_beta) {
            diag.has_strict = true;
            any_strict = true;
        }
    }

    bool regular_dense = true, tangency_dense = true;
    for (const WindowDiag& w : rep.windows) {
        regular_dense = regular_dense && w.has_regular;
        tangency_dense = tangency_dense && w.has_tangency;
    }

    if (!regular_dense)
        rep.classification = FamilyClass::uncountably_many;
    else if (tangency_dense)
        rep.classification = FamilyClass::unique_envelope;
    else if (any_strict)
        rep.classification = FamilyClass::exactly_two;
    else
        rep.classification = FamilyClass::ambiguous;
    return rep;
}

std::string report_text(const CreativityReport& report, const FrontalData& frontal) {
    std::ostringstream out;
    const int n = report.size();
    int n_solvable = 0, n_unconstrained = 0, n_nosol = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        switch (report.status[k]) {
            case PointStatus::solvable:
                ++n_solvable;
                break;
            case PointStatus::unconstrained:
                ++n_unconstrained;
                break;
            case PointStatus::no_solution:
                ++n_nosol;
                break;
        }
        worst_margin = std::min(worst_margin, report.margin[k]);
    }

    out << "classification: " << to_string(report.classification) << "\n";
    if (report.classification == FamilyClass::not_creative) {
        out << "witness: t = " << report.witness_t << " (|dlambda| = "
            << std::abs(frontal.dlambda[report.witness_index])
            << " > |beta| = " << std::abs(frontal.beta[report.witness_index]) << ")\n";
    }
    out << "samples: " << n << " (solvable " << n_solvable << ", unconstrained "
        << n_unconstrained << ", no-solution " << n_nosol << ")\n";
    out << "eps_beta: " << report.eps_beta << "  min margin |beta|-|dlambda|: " << worst_margin
        << "\n";
    for (const std::string& w : frontal.warnings) out << "warning: " << w << "\n";

    if (!report.windows.empty()) {
        out << "windows (" << report.windows.size() << "):\n";
        out << "  idx        t_lo        t_hi  samples  beta!=0  tangent  strict\n";
        for (std::size_t w = 0; w < report.windows.size(); ++w) {
            const WindowDiag& d = report.windows[w];
            char line[128];
            std::snprintf(line, sizeof(line), "  %3zu  %10.5g  %10.5g  %7d  %7s  %7s  %6s\n", w,
                          d.t_lo, d.t_hi, d.samples, d.has_regular ? "yes" : "no",
                          d.has_tangency ? "yes" : "no", d.has_strict ? "yes" : "no");
            out << line;
        }
    }
    return out.str();
}

}  // namespace envcf
