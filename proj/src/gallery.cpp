#include "envcf/gallery.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "envcf/envelope.hpp"
#include "envcf/errors.hpp"

namespace envcf {

namespace {

constexpr double kFormTol = 1e-9;  // symbolic-frame match against the closed forms

std::vector<GalleryEntry> make_entries() {
    std::vector<GalleryEntry> entries;

    {
        GalleryEntry e;
        e.id = "example3";
        e.scenario_text =
            "name = example3\n"
            "gamma.x = t^3\n"
            "gamma.y = t^6\n"
            "lambda = 1\n"
            "nu.x = -2*t^3 / sqrt(4*t^6 + 1)\n"
            "nu.y = 1 / sqrt(4*t^6 + 1)\n"
            "interval = -1.5 1.5\n";
        e.expected = FamilyClass::exactly_two;
        e.closed_form = {
            [](double t) {
                const double w = std::sqrt(4.0 * std::pow(t, 6) + 1.0);
                return Vec2{t * t * t - 2.0 * t * t * t / w, std::pow(t, 6) + 1.0 / w};
            },
            [](double t) {
                const double w = std::sqrt(4.0 * std::pow(t, 6) + 1.0);
                return Vec2{t * t * t + 2.0 * t * t * t / w, std::pow(t, 6) - 1.0 / w};
            },
        };
        entries.push_back(std::move(e));
    }
    {
        GalleryEntry e;
        e.id = "example4";
        e.scenario_text =
            "name = example4\n"
            "gamma.x = 0\n"
            "gamma.y = 1 + t\n"
            "lambda = 1 + t\n"
            "nu.x = 1\n"
            "nu.y = 0\n"
            "interval = 0 2\n";
        e.expected = FamilyClass::unique_envelope;
        e.closed_form = {
            [](double) { return Vec2{0.0, 0.0}; },
        };
        entries.push_back(std::move(e));
    }
    {
        GalleryEntry e;
        e.id = "example5";
        e.scenario_text =
            "name = example5\n"
            "gamma.x = t\n"
            "gamma.y = 0\n"
            "lambda = 1\n"
            "nu.x = 0\n"
            "nu.y = -1\n"
            "interval = -2 2\n";
        e.expected = FamilyClass::exactly_two;
        e.closed_form = {
            [](double t) { return Vec2{t, -1.0}; },
            [](double t) { return Vec2{t, 1.0}; },
        };
        entries.push_back(std::move(e));
    }
    {
        GalleryEntry e;
        e.id = "example6";
        e.scenario_text =
            "name = example6\n"
            "gamma.x = 0\n"
            "gamma.y = 0\n"
            "lambda = 1\n"
            "nu.x = cos(t)\n"
            "nu.y = sin(t)\n"
            "interval = 0 6.2832\n";
        e.expected = FamilyClass::uncountably_many;
        // The canonical emitted creators reduce to +-nu here.
        e.closed_form = {
            [](double t) { return Vec2{std::cos(t), std::sin(t)}; },
            [](double t) { return Vec2{-std::cos(t), -std::sin(t)}; },
        };
        entries.push_back(std::move(e));
    }
    {
        GalleryEntry e;
        e.id = "example7";
        e.scenario_text =
            "name = example7\n"
            "gamma.x = t\n"
            "gamma.y = 0\n"
            "lambda = t^2\n"
            "nu.x = 0\n"
            "nu.y = -1\n"
            "interval = 0 2\n";
        e.expected = FamilyClass::not_creative;
        e.witness_lo = 0.5;
        e.witness_hi = 0.6;
        entries.push_back(std::move(e));
    }
    {
        GalleryEntry e;
        e.id = "example8";
        e.scenario_text =
            "name = example8\n"
            "gamma.x = t\n"
            "gamma.y = 0\n"
            "lambda = t^2\n"
            "nu.x = 0\n"
            "nu.y = -1\n"
            "interval = 0 0.45\n";
        e.expected = FamilyClass::exactly_two;
        e.closed_form = {
            [](double t) {
                return Vec2{t - 2.0 * t * t * t, -t * t * std::sqrt(1.0 - 4.0 * t * t)};
            },
            [](double t) {
                return Vec2{t - 2.0 * t * t * t, t * t * std::sqrt(1.0 - 4.0 * t * t)};
            },
        };
        entries.push_back(std::move(e));
    }
    {
        GalleryEntry e;
        e.id = "example9";
        e.scenario_text =
            "name = example9\n"
            "gamma.x = t^3\n"
            "gamma.y = t^2\n"
            "lambda = 1\n"
            "nu.x = 2 / sqrt(4 + 9*t^2)\n"
            "nu.y = -3*t / sqrt(4 + 9*t^2)\n"
            "interval = -2 2\n";
        e.expected = FamilyClass::exactly_two;
        e.closed_form = {
            [](double t) {
                const double w = std::sqrt(4.0 + 9.0 * t * t);
                return Vec2{t * t * t + 2.0 / w, t * t - 3.0 * t / w};
            },
            [](double t) {
                const double w = std::sqrt(4.0 + 9.0 * t * t);
                return Vec2{t * t * t - 2.0 / w, t * t + 3.0 * t / w};
            },
        };
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace

const std::vector<GalleryEntry>& gallery_entries() {
    static const std::vector<GalleryEntry> entries = make_entries();
    return entries;
}

const GalleryEntry* gallery_entry(const std::string& id) {
    for (const GalleryEntry& e : gallery_entries())
        if (e.id == id) return &e;
    return nullptr;
}

// Best global branch<->form pairing: the Gauss-map sign convention swaps the
// labels but not the branch set, so both pairings are tried.
static double form_error(const std::vector<EnvelopeBranch>& branches,
                         const std::vector<std::function<Vec2(double)>>& forms) {
    if (branches.size() != forms.size()) return std::numeric_limits<double>::infinity();
    const std::size_t m = branches.size();
    double best = std::numeric_limits<double>::infinity();
    const int orders = m == 2 ? 2 : 1;
    for (int o = 0; o < orders; ++o) {
        double worst = 0.0;
        for (std::size_t b = 0; b < m; ++b) {
            const auto& form = forms[o == 0 ? b : m - 1 - b];
            const EnvelopeBranch& br = branches[b];
            for (int k = 0; k < br.size(); ++k)
                worst = std::max(worst, distance(br.point[k], form(br.t[k])));
        }
        best = std::min(best, worst);
    }
    return best;
}

GalleryReport run_gallery(int samples_override) {
    GalleryReport report;
    report.all_pass = true;
    for (const GalleryEntry& entry : gallery_entries()) {
        GalleryRow row;
        row.id = entry.id;
        row.expected = entry.expected;
        try {
            const Scenario sc = parse_scenario(entry.scenario_text);
            const auto family = build_family(sc, samples_override);
            const FrontalData frontal = build_frontal(*family);
            const CreativityReport creativity = classify_family(frontal);
            row.actual = creativity.classification;
            row.pass = row.actual == entry.expected;
            if (!row.pass) row.detail = "classification mismatch";

            if (creativity.classification == FamilyClass::not_creative) {
                row.witness_t = creativity.witness_t;
                if (entry.witness_hi > entry.witness_lo &&
                    !(row.witness_t > entry.witness_lo && row.witness_t <= entry.witness_hi)) {
                    row.pass = false;
                    row.detail = "witness outside expected range";
                }
            } else {
                std::vector<EnvelopeBranch> branches = creator_branches(creativity, frontal);
                for (EnvelopeBranch& br : branches) build_envelope(br, frontal);
                if (!entry.closed_form.empty()) {
                    row.form_checked = true;
                    row.max_form_error = form_error(branches, entry.closed_form);
                    if (!(row.max_form_error <= kFormTol)) {
                        row.pass = false;
                        row.detail = "closed-form mismatch";
                    }
                }
                row.residual_checked = true;
                const double tol1 = residual_budget(samples_override);
                for (const EnvelopeBranch& br : branches) {
                    const ResidualReport res = verify_envelope(br, frontal, tol1);
                    row.r1 = std::max(row.r1, res.r1);
                    row.r2 = std::max(row.r2, res.r2);
                    row.residual_scale = std::max(row.residual_scale, res.scale);
                    if (!res.pass) {
                        row.pass = false;
                        row.detail = "residual check failed on branch " + br.name();
                    }
                }
            }
        } catch (const Error& e) {
            row.pass = false;
            row.detail = e.what();
        }
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string gallery_table(const GalleryReport& report) {
    std::ostringstream out;
    out << "example    expected         actual           form-err   r1         r2         "
           "result\n";
    for (const GalleryRow& row : report.rows) {
        char line[200];
        std::snprintf(line, sizeof(line), "%-10s %-16s %-16s %-10.3g %-10.3g %-10.3g %s\n",
                      row.id.c_str(), to_string(row.expected), to_string(row.actual),
                      row.form_checked ? row.max_form_error : 0.0,
                      row.residual_checked ? row.r1 : 0.0, row.residual_checked ? row.r2 : 0.0,
                      row.pass ? "pass" : ("FAIL: " + row.detail).c_str());
        out << line;
    }
    out << (report.all_pass ? "gallery: all examples pass\n" : "gallery: FAILURES present\n");
    return out.str();
}

}  // namespace envcf
