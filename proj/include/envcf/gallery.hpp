#pragma once

// Bundled gallery of circle families with known classifications and, where
// they exist, closed-form envelopes. Scenario texts are embedded so the
// gallery runs without file-system dependencies; the same texts ship as
// gallery/*.scn for CLI use.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "envcf/family.hpp"
#include "envcf/creativity.hpp"

namespace envcf {

struct GalleryEntry {
    std::string id;             // example3 .. example9
    std::string scenario_text;
    FamilyClass expected;
    double witness_lo = 0.0;    // NotCreative: expected witness range (lo, hi]
    double witness_hi = 0.0;
    // Closed-form envelope branches (empty when no closed form is known).
    // Sign +1 / -1 selects the branch; Unique entries have one form.
    std::vector<std::function<Vec2(double)>> closed_form;
};

const std::vector<GalleryEntry>& gallery_entries();
const GalleryEntry* gallery_entry(const std::string& id);

struct GalleryRow {
    std::string id;
    FamilyClass expected;
    FamilyClass actual;
    double max_form_error = 0.0;   // vs closed form, best branch pairing
    bool form_checked = false;
    double r1 = 0.0, r2 = 0.0;     // worst residuals over branches
    double residual_scale = 1.0;
    bool residual_checked = false;
    double witness_t = 0.0;
    bool pass = false;
    std::string detail;
};

struct GalleryReport {
    std::vector<GalleryRow> rows;
    bool all_pass = false;
};

// Runs every gallery scenario: classification, envelope-vs-closed-form
// error, residual verification. samples_override > 0 replaces the default
// grid size. Failures are reported results, not errors.
GalleryReport run_gallery(int samples_override = 0);

std::string gallery_table(const GalleryReport& report);

}  // namespace envcf
