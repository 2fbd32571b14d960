#include "envcf/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "envcf/errors.hpp"
#include "envcf/parallel.hpp"

namespace envcf {

namespace {

constexpr double kContactBand = 1e-9;  // |cos(theta)| >= 1 - band: branches touch

// cos(theta) over the grid with unconstrained gaps bridged by linear
// interpolation between the nearest solvable neighbours (0 with none).
std::vector<double> filled_cos(const CreativityReport& report, const FrontalData& frontal) {
    const int n = report.size();
    std::vector<double> cosv(report.cos_theta);
    int k = 0;
    while (k < n) {
        if (report.status[k] != PointStatus::unconstrained) {
            ++k;
            continue;
        }
        int j = k;
        while (j + 1 < n && report.status[j + 1] == PointStatus::unconstrained) ++j;
        const int left = k - 1;
        const int right = j + 1 < n ? j + 1 : -1;
        for (int i = k; i <= j; ++i) {
            if (left >= 0 && right >= 0) {
                const double w =
                    (frontal.t[i] - frontal.t[left]) / (frontal.t[right] - frontal.t[left]);
                cosv[i] = (1.0 - w) * cosv[left] + w * cosv[right];
            } else if (left >= 0) {
                cosv[i] = cosv[left];
            } else if (right >= 0) {
                cosv[i] = cosv[right];
            } else {
                cosv[i] = 0.0;
            }
        }
        k = j + 1;
    }
    return cosv;
}

EnvelopeBranch make_branch(BranchLabel label, const std::vector<double>& cosv,
                           const FrontalData& frontal, double sin_sign) {
    const int n = frontal.size();
    EnvelopeBranch br;
    br.label = label;
    br.t = frontal.t;
    br.cos_theta = cosv;
    br.creator.resize(n);
    for (int k = 0; k < n; ++k) {
        const double c = cosv[k];
        const double s = sin_sign * std::sqrt(std::max(0.0, 1.0 - c * c));
        br.creator[k] = -c * frontal.mu[k] + s * frontal.nu[k];
        if (std::abs(c) >= 1.0 - kContactBand) br.contact_samples.push_back(k);
    }
    if (!br.contact_samples.empty() && label != BranchLabel::forced) {
        br.warnings.push_back("branches touch at " + std::to_string(br.contact_samples.size()) +
                              " sample(s); they may cross there");
    }
    for (int k = 0; k + 1 < n; ++k) {
        if (br.creator[k].dot(br.creator[k + 1]) < 0.9) {
            br.warnings.push_back("creator turns sharply near t = " + std::to_string(br.t[k]));
            break;
        }
    }
    return br;
}

// theta profile of a branch (angle whose cos/sin build the creator).
std::vector<double> branch_theta(const std::vector<double>& cosv, double sin_sign) {
    std::vector<double> theta(cosv.size());
    for (std::size_t k = 0; k < cosv.size(); ++k)
        theta[k] = sin_sign >= 0.0 ? std::acos(std::clamp(cosv[k], -1.0, 1.0))
                                   : -std::acos(std::clamp(cosv[k], -1.0, 1.0));
    return theta;
}

}  // namespace

const char* to_string(BranchLabel label) {
    switch (label) {
        case BranchLabel::plus:
            return "plus";
        case BranchLabel::minus:
            return "minus";
        case BranchLabel::forced:
            return "forced";
        case BranchLabel::randomized:
            return "random";
    }
    return "?";
}

std::string EnvelopeBranch::name() const {
    if (label == BranchLabel::randomized)
        return std::string(to_string(label)) + "-" + std::to_string(random_index);
    return to_string(label);
}

std::vector<EnvelopeBranch> creator_branches(const CreativityReport& report,
                                             const FrontalData& frontal,
                                             const CreatorOptions& options) {
    if (!report.creative())
        throw Error(errc::not_creative,
                    "family is not creative (witness t = " + std::to_string(report.witness_t) +
                        "); no creator exists");

    const std::vector<double> cosv = filled_cos(report, frontal);
    std::vector<EnvelopeBranch> branches;
    if (report.classification == FamilyClass::unique_envelope) {
        branches.push_back(make_branch(BranchLabel::forced, cosv, frontal, +1.0));
    } else {
        branches.push_back(make_branch(BranchLabel::plus, cosv, frontal, +1.0));
        branches.push_back(make_branch(BranchLabel::minus, cosv, frontal, -1.0));
    }

    // Randomized creators: vary theta by a smooth bump on each unconstrained
    // run, matched at run endpoints adjacent to solvable samples. On such
    // runs beta == 0 == dlambda, so the creative identity holds for any
    // unit field; this realizes the bump-function construction behind the
    // uncountably-many case.
    if (options.randomized > 0) {
        std::vector<std::pair<int, int>> runs;
        int k = 0;
        const int n = report.size();
        while (k < n) {
            if (report.status[k] != PointStatus::unconstrained) {
                ++k;
                continue;
            }
            int j = k;
            while (j + 1 < n && report.status[j + 1] == PointStatus::unconstrained) ++j;
            runs.emplace_back(k, j);
            k = j + 1;
        }
        if (!runs.empty()) {
            std::mt19937_64 rng(options.seed);
            std::uniform_real_distribution<double> amp(-M_PI, M_PI);
            const std::vector<double> base_theta = branch_theta(cosv, +1.0);
            for (int r = 1; r <= options.randomized; ++r) {
                std::vector<double> theta = base_theta;
                for (const auto& [i, j] : runs) {
                    const double a = amp(rng);
                    const bool pin_left = i > 0;
                    const bool pin_right = j + 1 < n;
                    for (int s = i; s <= j; ++s) {
                        double w = (j == i) ? 0.5
                                            : static_cast<double>(s - i) /
                                                  static_cast<double>(j - i);
                        double bump = 1.0;
                        if (pin_left && pin_right)
                            bump = std::sin(M_PI * w);
                        else if (pin_left)
                            bump = std::sin(0.5 * M_PI * w);
                        else if (pin_right)
                            bump = std::cos(0.5 * M_PI * w);
                        theta[s] += a * bump;
                    }
                }
                EnvelopeBranch br;
                br.label = BranchLabel::randomized;
                br.random_index = r;
                br.t = frontal.t;
                br.cos_theta.resize(n);
                br.creator.resize(n);
                for (int s = 0; s < n; ++s) {
                    br.cos_theta[s] = std::cos(theta[s]);
                    br.creator[s] = -std::cos(theta[s]) * frontal.mu[s] +
                                    std::sin(theta[s]) * frontal.nu[s];
                }
                branches.push_back(std::move(br));
            }
        }
    }

    return branches;
}

void build_envelope(EnvelopeBranch& branch, const FrontalData& frontal) {
    const int n = frontal.size();
    branch.point.resize(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        branch.point[k] = frontal.gamma[k] + frontal.lambda[k] * branch.creator[k];
    });
}

std::vector<Vec2> envelope_points_at(const Family& family, const FrontalData& frontal, double t) {
    Vec2 nu, mu;
    if (!frame_at(family, t, frontal.eps_sing, &nu, &mu)) return {};
    const double beta = family.dgamma(t).dot(mu);
    double c = 0.0;
    const PointStatus st = pointwise_creative(family.dlambda(t), beta, frontal.eps_sing, &c);
    if (st == PointStatus::no_solution) return {};
    if (st == PointStatus::unconstrained) c = 0.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const Vec2 g = family.gamma(t);
    const double lam = family.lambda(t);
    const Vec2 up = -c * mu + s * nu;
    const Vec2 um = -c * mu - s * nu;
    if (s == 0.0) return {g + lam * up};
    return {g + lam * up, g + lam * um};
}

double residual_budget(int samples) {
    const double n = samples > 0 ? samples : 2001;
    const double ratio = 2001.0 / n;
    return 1e-6 * std::max(1.0, ratio * ratio);
}

ResidualReport verify_envelope(const EnvelopeBranch& branch, const FrontalData& frontal,
                               double tol1, double tol2) {
    ResidualReport rep;
    rep.tol1 = tol1;
    rep.tol2 = tol2;
    const int n = branch.size();
    const double h = frontal.grid.spacing();

    double max_speed = 0.0;
    for (int k = 1; k + 1 < n; ++k) {
        const Vec2 df = (branch.point[k + 1] - branch.point[k - 1]) / (2.0 * h);
        max_speed = std::max(max_speed, df.norm());
        const double r1 = std::abs(df.dot(branch.point[k] - frontal.gamma[k]));
        if (r1 > rep.r1) {
            rep.r1 = r1;
            rep.r1_argmax_t = branch.t[k];
        }
    }
    double max_lambda = 0.0;
    for (int k = 0; k < n; ++k) {
        max_lambda = std::max(max_lambda, frontal.lambda[k]);
        const double r2 =
            std::abs((branch.point[k] - frontal.gamma[k]).norm() - frontal.lambda[k]);
        if (r2 > rep.r2) {
            rep.r2 = r2;
            rep.r2_argmax_t = branch.t[k];
        }
    }
    rep.scale = (1.0 + max_speed) * (1.0 + max_lambda);
    rep.pass = rep.r1 <= rep.tol1 * rep.scale && rep.r2 <= rep.tol2;
    return rep;
}

}  // namespace envcf
