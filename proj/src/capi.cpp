#include "envcf/envcf.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "envcf/discriminant.hpp"
#include "envcf/envelope.hpp"
#include "envcf/errors.hpp"
#include "envcf/family.hpp"
#include "envcf/gallery.hpp"
#include "envcf/render.hpp"
#include "envcf/seismic.hpp"

using namespace envcf;

namespace {

thread_local std::string g_last_error;

envcf_status status_of(errc code) {
    switch (code) {
        case errc::parse:
            return ENVCF_ERROR_PARSE;
        case errc::validate:
            return ENVCF_ERROR_VALIDATE;
        case errc::domain:
            return ENVCF_ERROR_DOMAIN;
        case errc::not_creative:
            return ENVCF_ERROR_NOT_CREATIVE;
        case errc::degenerate:
            return ENVCF_ERROR_DEGENERATE;
        case errc::io:
            return ENVCF_ERROR_IO;
        case errc::invalid_arg:
            return ENVCF_ERROR_ARG;
    }
    return ENVCF_ERROR_INTERNAL;
}

template <typename Fn>
envcf_status guarded(Fn&& fn) {
    try {
        fn();
        return ENVCF_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ENVCF_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ENVCF_ERROR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

struct envcf_family {
    Scenario scenario;
};

struct envcf_analysis {
    std::shared_ptr<const Family> family;
    double render_margin = 0.05;
    int render_stride = 0;
    FrontalData frontal;
    CreativityReport report;
    envcf_options options{};
    // computed on demand
    mutable std::optional<std::vector<EnvelopeBranch>> branches;
    mutable std::optional<DiscriminantSet> discriminant;

    const std::vector<EnvelopeBranch>& need_branches() const {
        if (!branches) {
            CreatorOptions copts;
            copts.randomized = options.random_creators;
            copts.seed = options.seed;
            std::vector<EnvelopeBranch> out = creator_branches(report, frontal, copts);
            for (EnvelopeBranch& br : out) build_envelope(br, frontal);
            branches = std::move(out);
        }
        return *branches;
    }

    const DiscriminantSet& need_discriminant() const {
        if (!discriminant)
            discriminant = discriminant_set(*family, frontal, report, need_branches());
        return *discriminant;
    }
};

struct envcf_survey {
    SurveyData data;
};

struct envcf_seismic {
    SeismicResult result;
};

void envcf_options_init(envcf_options* options) {
    if (!options) return;
    options->samples = 0;
    options->windows = 0;
    options->eps_beta = 0.0;
    options->random_creators = 0;
    options->seed = 0x5eed5eedULL;
}

const char* envcf_version(void) { return "0.1.0"; }

const char* envcf_last_error(void) { return g_last_error.c_str(); }

void envcf_string_free(char* s) { std::free(s); }

envcf_status envcf_family_load(const char* path, envcf_family** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return ENVCF_ERROR_ARG;
    }
    return guarded([&] {
        auto handle = std::make_unique<envcf_family>();
        handle->scenario = load_scenario(path);
        *out = handle.release();
    });
}

envcf_status envcf_family_parse(const char* scenario_text, envcf_family** out) {
    if (!scenario_text || !out) {
        g_last_error = "null argument";
        return ENVCF_ERROR_ARG;
    }
    return guarded([&] {
        auto handle = std::make_unique<envcf_family>();
        handle->scenario = parse_scenario(scenario_text);
        *out = handle.release();
    });
}

void envcf_family_free(envcf_family* family) { delete family; }

const char* envcf_family_name(const envcf_family* family) {
    return family ? family->scenario.name.c_str() : "";
}

envcf_status envcf_analyze(const envcf_family* family, const envcf_options* options,
                           envcf_analysis** out) {
    if (!family || !out) {
        g_last_error = "null argument";
        return ENVCF_ERROR_ARG;
    }
    return guarded([&] {
        auto handle = std::make_unique<envcf_analysis>();
        if (options) handle->options = *options;
        else envcf_options_init(&handle->options);
        const auto fam = build_family(family->scenario, handle->options.samples);
        handle->family = fam;
        handle->render_margin = family->scenario.render_margin;
        handle->render_stride = family->scenario.render_stride;
        handle->frontal = build_frontal(*handle->family);
        CreativityOptions copts;
        if (handle->options.eps_beta > 0.0) copts.eps_beta = handle->options.eps_beta;
        if (handle->options.windows > 0) copts.windows = handle->options.windows;
        handle->report = classify_family(handle->frontal, copts);
        *out = handle.release();
    });
}

void envcf_analysis_free(envcf_analysis* analysis) { delete analysis; }

envcf_class envcf_classification(const envcf_analysis* analysis) {
    switch (analysis->report.classification) {
        case FamilyClass::not_creative:
            return ENVCF_NOT_CREATIVE;
        case FamilyClass::unique_envelope:
            return ENVCF_UNIQUE;
        case FamilyClass::exactly_two:
            return ENVCF_EXACTLY_TWO;
        case FamilyClass::uncountably_many:
            return ENVCF_UNCOUNTABLY_MANY;
        case FamilyClass::ambiguous:
            return ENVCF_AMBIGUOUS;
    }
    return ENVCF_AMBIGUOUS;
}

double envcf_witness_t(const envcf_analysis* analysis) { return analysis->report.witness_t; }

int envcf_sample_count(const envcf_analysis* analysis) { return analysis->frontal.size(); }

int envcf_branch_count(const envcf_analysis* analysis) {
    if (!analysis->report.creative()) return 0;
    int count = 0;
    envcf_status st = guarded([&] { count = static_cast<int>(analysis->need_branches().size()); });
    return st == ENVCF_OK ? count : 0;
}

envcf_status envcf_report_text(const envcf_analysis* analysis, char** out) {
    if (!analysis || !out) return ENVCF_ERROR_ARG;
    return guarded([&] { *out = copy_string(report_text(analysis->report, analysis->frontal)); });
}

envcf_status envcf_verify_text(const envcf_analysis* analysis, char** out) {
    if (!analysis || !out) return ENVCF_ERROR_ARG;
    return guarded([&] {
        std::ostringstream text;
        for (const EnvelopeBranch& br : analysis->need_branches()) {
            const ResidualReport res = verify_envelope(
                br, analysis->frontal, residual_budget(analysis->frontal.size()));
            text << "branch " << br.name() << ": r1 = " << res.r1 << " (tol "
                 << res.tol1 * res.scale << "), r2 = " << res.r2 << " (tol " << res.tol2
                 << ") -> " << (res.pass ? "pass" : "FAIL") << "\n";
            for (const std::string& w : br.warnings) text << "  warning: " << w << "\n";
        }
        *out = copy_string(text.str());
    });
}

envcf_status envcf_write_creativity_csv(const envcf_analysis* analysis, const char* path) {
    if (!analysis || !path) return ENVCF_ERROR_ARG;
    return guarded(
        [&] { write_file(path, creativity_csv(analysis->report, analysis->frontal)); });
}

envcf_status envcf_write_frontal_csv(const envcf_analysis* analysis, const char* path) {
    if (!analysis || !path) return ENVCF_ERROR_ARG;
    return guarded([&] { write_file(path, frontal_csv(analysis->frontal)); });
}

envcf_status envcf_write_envelope_csv(const envcf_analysis* analysis, const char* path) {
    if (!analysis || !path) return ENVCF_ERROR_ARG;
    return guarded([&] { write_file(path, envelope_csv(analysis->need_branches())); });
}

envcf_status envcf_write_discriminant_csv(const envcf_analysis* analysis, const char* path) {
    if (!analysis || !path) return ENVCF_ERROR_ARG;
    return guarded([&] { write_file(path, discriminant_csv(analysis->need_discriminant().slices)); });
}

envcf_status envcf_write_svg(const envcf_analysis* analysis, unsigned layers, const char* path) {
    if (!analysis || !path) return ENVCF_ERROR_ARG;
    return guarded([&] {
        SvgScene scene;
        if (layers & ENVCF_SVG_CIRCLES)
            scene.add_family_circles(analysis->frontal, analysis->render_stride);
        if (layers & ENVCF_SVG_CENTER) scene.add_center_curve(analysis->frontal);
        if (layers & ENVCF_SVG_BRANCHES) scene.add_branches(analysis->need_branches());
        if (layers & ENVCF_SVG_DISCRIMINANT) scene.add_slices(analysis->need_discriminant().slices);
        SvgOptions options;
        options.margin = analysis->render_margin;
        write_file(path, render_svg(scene, options));
    });
}

envcf_status envcf_e1_report(const envcf_analysis* analysis, double t0, char** text,
                             const char* csv_path_or_null) {
    if (!analysis || !text) return ENVCF_ERROR_ARG;
    return guarded([&] {
        const E1Result result = e1_limit(*analysis->family, analysis->frontal, t0);
        std::ostringstream out;
        out << "E1 limits at t0 = " << t0 << "\n";
        if (result.coincident)
            out << "circles coincide near t0: E1 construction degenerate (uncountable case)\n";
        int i = 0;
        for (const E1Track& track : result.tracks) {
            out << "track " << i++ << " (eps " << (track.direction > 0 ? "> 0" : "< 0")
                << "): target f(t0) = (" << track.target.x << ", " << track.target.y
                << "), final distance = " << track.final_distance << ", extrapolated limit = ("
                << track.extrapolated.x << ", " << track.extrapolated.y << ") at distance "
                << track.extrapolated_distance << ", fitted order = ";
            if (track.at_floor)
                out << "exact (roundoff floor)";
            else
                out << track.fitted_order;
            out << "\n";
        }
        for (const std::string& n : result.notes) out << "note: " << n << "\n";
        *text = copy_string(out.str());
        if (csv_path_or_null) write_file(csv_path_or_null, e1_csv(result));
    });
}

envcf_status envcf_gallery_run(int samples, const char* out_dir_or_null, char** table,
                               int* all_pass) {
    if (!table || !all_pass) return ENVCF_ERROR_ARG;
    return guarded([&] {
        const GalleryReport report = run_gallery(samples);
        *table = copy_string(gallery_table(report));
        *all_pass = report.all_pass ? 1 : 0;
        if (out_dir_or_null) {
            const std::string dir(out_dir_or_null);
            for (const GalleryEntry& entry : gallery_entries()) {
                envcf_family* fam = nullptr;
                if (envcf_family_parse(entry.scenario_text.c_str(), &fam) != ENVCF_OK) continue;
                envcf_options opts;
                envcf_options_init(&opts);
                opts.samples = samples;
                envcf_analysis* an = nullptr;
                if (envcf_analyze(fam, &opts, &an) == ENVCF_OK) {
                    envcf_write_creativity_csv(an, (dir + "/" + entry.id + "_creativity.csv").c_str());
                    if (an->report.creative()) {
                        envcf_write_envelope_csv(an, (dir + "/" + entry.id + "_envelope.csv").c_str());
                        envcf_write_svg(an,
                                        ENVCF_SVG_CIRCLES | ENVCF_SVG_CENTER | ENVCF_SVG_BRANCHES,
                                        (dir + "/" + entry.id + ".svg").c_str());
                    }
                    envcf_analysis_free(an);
                }
                envcf_family_free(fam);
            }
        }
    });
}

envcf_status envcf_survey_load(const char* csv_path, const char* config_path_or_null,
                               const double* source_xy_or_null, double speed, int side,
                               envcf_survey** out) {
    if (!csv_path || !out) return ENVCF_ERROR_ARG;
    return guarded([&] {
        Vec2 source{0.0, 0.0};
        bool have_source = false;
        double cfg_speed = 0.0;
        int cfg_side = -1;
        if (config_path_or_null) {
            std::ifstream in(config_path_or_null, std::ios::binary);
            if (!in)
                throw Error(errc::io,
                            std::string("cannot open config '") + config_path_or_null + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            for (const auto& [key, value] : parse_key_values(buf.str())) {
                if (key == "source") {
                    std::istringstream v(value);
                    if (!(v >> source.x >> source.y))
                        throw Error(errc::parse, "config: source must be \"x y\"");
                    have_source = true;
                } else if (key == "speed") {
                    cfg_speed = std::stod(value);
                } else if (key == "side") {
                    if (value == "lower")
                        cfg_side = 0;
                    else if (value == "upper")
                        cfg_side = 1;
                    else
                        throw Error(errc::parse, "config: side must be upper or lower");
                } else {
                    throw Error(errc::parse, "config: unknown key '" + key + "'");
                }
            }
        }
        if (source_xy_or_null) {
            source = {source_xy_or_null[0], source_xy_or_null[1]};
            have_source = true;
        }
        if (!have_source) throw Error(errc::validate, "survey source point missing");
        const double use_speed = speed > 0.0 ? speed : cfg_speed;
        if (!(use_speed > 0.0)) throw Error(errc::validate, "survey speed missing or <= 0");
        int use_side = side >= 0 ? side : (cfg_side >= 0 ? cfg_side : 0);
        auto handle = std::make_unique<envcf_survey>();
        handle->data = ingest_survey_file(
            csv_path, source, use_speed,
            use_side == 0 ? ReflectorSide::lower : ReflectorSide::upper);
        *out = handle.release();
    });
}

void envcf_survey_free(envcf_survey* survey) { delete survey; }

envcf_status envcf_seismic_run(const envcf_survey* survey, const envcf_options* options,
                               envcf_seismic** out) {
    if (!survey || !out) return ENVCF_ERROR_ARG;
    return guarded([&] {
        int samples = options && options->samples > 0 ? options->samples : 2001;
        auto handle = std::make_unique<envcf_seismic>();
        handle->result = recover_orthotomic(survey->data, samples);
        *out = handle.release();
    });
}

void envcf_seismic_free(envcf_seismic* seismic) { delete seismic; }

envcf_status envcf_seismic_report(const envcf_seismic* seismic, char** out) {
    if (!seismic || !out) return ENVCF_ERROR_ARG;
    return guarded([&] {
        const SeismicResult& r = seismic->result;
        std::ostringstream text;
        text << report_text(r.report, r.frontal);
        text << "orthotomic: branch " << r.orthotomic().name() << " of " << r.branches.size()
             << "\n";
        if (!r.reflector.empty()) {
            int flagged = 0;
            for (const ReflectorPoint& p : r.reflector) flagged += p.flagged ? 1 : 0;
            text << "reflector: " << r.reflector.size() << " samples, " << flagged
                 << " flagged\n";
        }
        *out = copy_string(text.str());
    });
}

envcf_status envcf_seismic_write_orthotomic_csv(const envcf_seismic* seismic, const char* path) {
    if (!seismic || !path) return ENVCF_ERROR_ARG;
    return guarded([&] { write_file(path, orthotomic_csv(seismic->result.orthotomic())); });
}

envcf_status envcf_seismic_write_reflector_csv(const envcf_seismic* seismic, const char* path) {
    if (!seismic || !path) return ENVCF_ERROR_ARG;
    return guarded([&] { write_file(path, reflector_csv(seismic->result.reflector)); });
}

envcf_status envcf_seismic_write_svg(const envcf_seismic* seismic, const char* path) {
    if (!seismic || !path) return ENVCF_ERROR_ARG;
    return guarded([&] {
        const SeismicResult& r = seismic->result;
        SvgScene scene;
        scene.add_family_circles(r.frontal, 0);
        scene.add_center_curve(r.frontal);
        scene.add_branches({r.orthotomic()});
        write_file(path, render_svg(scene));
    });
}

}  // extern "C"
