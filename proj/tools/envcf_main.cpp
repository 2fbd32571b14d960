// envcf command line: scenario-driven analyses of circle families and the
// seismic orthotomic pipeline. Talks to the engine exclusively through the
// C API in envcf/envcf.h.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "envcf/envcf.h"

namespace {

struct CommonArgs {
    std::string scenario;
    int samples = 0;
    int windows = 0;
    double eps_beta = 0.0;
    std::string out_dir;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs* args, bool needs_scenario = true) {
    if (needs_scenario)
        cmd->add_option("--scenario", args->scenario, "scenario file (key = value lines)")
            ->required();
    cmd->add_option("--samples", args->samples, "sample grid size (default 2001)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--windows", args->windows, "classification window count (default 64)");
    cmd->add_option("--eps-beta", args->eps_beta, "singularity cutoff override");
    cmd->add_option("--out", args->out_dir, "output directory for CSV/SVG artifacts");
    cmd->add_option("--format", args->format, "csv|svg|both (default csv)")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
}

[[noreturn]] void die(const std::string& context) {
    std::fprintf(stderr, "envcf: %s: %s\n", context.c_str(), envcf_last_error());
    std::exit(2);
}

std::string output_dir(const CommonArgs& args) {
    if (!args.out_dir.empty()) return args.out_dir;
    if (const char* env = std::getenv("ENVCF_OUT_DIR"); env && *env) return env;
    return {};
}

std::string ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::fprintf(stderr, "envcf: cannot create output directory '%s'\n", dir.c_str());
        std::exit(2);
    }
    return dir;
}

std::string stem_of(const std::string& scenario_path, const envcf_family* family) {
    const std::string name = envcf_family_name(family);
    if (!name.empty()) return name;
    return std::filesystem::path(scenario_path).stem().string();
}

struct Analysis {
    envcf_family* family = nullptr;
    envcf_analysis* analysis = nullptr;
    ~Analysis() {
        envcf_analysis_free(analysis);
        envcf_family_free(family);
    }
};

void open_analysis(const CommonArgs& args, int random_creators, unsigned long long seed,
                   Analysis* out) {
    if (envcf_family_load(args.scenario.c_str(), &out->family) != ENVCF_OK)
        die("loading scenario '" + args.scenario + "'");
    envcf_options options;
    envcf_options_init(&options);
    options.samples = args.samples;
    options.windows = args.windows;
    options.eps_beta = args.eps_beta;
    options.random_creators = random_creators;
    options.seed = seed;
    if (envcf_analyze(out->family, &options, &out->analysis) != ENVCF_OK)
        die("analyzing '" + args.scenario + "'");
}

void print_text(envcf_status st, char* text, const char* context) {
    if (st != ENVCF_OK) die(context);
    std::fputs(text, stdout);
    envcf_string_free(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"envelopes created by circle families in the plane"};
    app.require_subcommand(1);

    CommonArgs analyze_args, envelope_args, discriminant_args, e1_args, seismic_args;
    int random_creators = 0;
    unsigned long long seed = 0x5eed5eedULL;
    double t0 = 0.0;
    std::string survey_csv, seismic_config;
    std::vector<double> source_xy;
    double speed = 0.0;
    std::string side = "";
    bool emit_reflector = false;
    int gallery_samples = 0;
    std::string gallery_out;

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "creativity report for a scenario");
    add_common(cmd_analyze, &analyze_args);

    CLI::App* cmd_envelope = app.add_subcommand("envelope", "construct and verify envelopes");
    add_common(cmd_envelope, &envelope_args);
    cmd_envelope->add_option("--random-creators", random_creators,
                             "extra randomized creators on beta==0 subintervals");
    cmd_envelope->add_option("--seed", seed, "seed for randomized creators");

    CLI::App* cmd_discriminant =
        app.add_subcommand("discriminant", "discriminant slices and decomposition");
    add_common(cmd_discriminant, &discriminant_args);

    CLI::App* cmd_e1 = app.add_subcommand("e1", "limit of nearby circle intersections");
    add_common(cmd_e1, &e1_args);
    cmd_e1->add_option("--t0", t0, "base parameter")->required();

    CLI::App* cmd_seismic = app.add_subcommand("seismic", "recover the orthotomic from a survey");
    add_common(cmd_seismic, &seismic_args, /*needs_scenario=*/false);
    cmd_seismic->add_option("--survey", survey_csv, "survey CSV (t,sensor_x,sensor_y,arrival_s)")
        ->required();
    cmd_seismic->add_option("--config", seismic_config, "config file (source/speed/side keys)");
    cmd_seismic->add_option("--source", source_xy, "source point: x y")->expected(2);
    cmd_seismic->add_option("--speed", speed, "wave speed (m/s)");
    cmd_seismic->add_option("--side", side, "reflector side: lower|upper")
        ->check(CLI::IsMember({"lower", "upper"}));
    cmd_seismic->add_flag("--reflector", emit_reflector, "also write the reconstructed reflector");

    CLI::App* cmd_gallery = app.add_subcommand("gallery", "run the bundled example gallery");
    cmd_gallery->add_option("--samples", gallery_samples, "sample grid size (default 2001)")
        ->check(CLI::PositiveNumber);
    cmd_gallery->add_option("--out", gallery_out, "output directory for per-example artifacts");

    CLI11_PARSE(app, argc, argv);

    if (cmd_analyze->parsed()) {
        Analysis a;
        open_analysis(analyze_args, 0, seed, &a);
        char* text = nullptr;
        const envcf_status report_st = envcf_report_text(a.analysis, &text);
        print_text(report_st, text, "report");
        const std::string dir = output_dir(analyze_args);
        if (!dir.empty()) {
            ensure_dir(dir);
            const std::string stem = dir + "/" + stem_of(analyze_args.scenario, a.family);
            if (analyze_args.format != "svg") {
                if (envcf_write_creativity_csv(a.analysis, (stem + "_creativity.csv").c_str()) !=
                    ENVCF_OK)
                    die("writing creativity CSV");
                if (envcf_write_frontal_csv(a.analysis, (stem + "_frontal.csv").c_str()) !=
                    ENVCF_OK)
                    die("writing frontal CSV");
            }
            if (analyze_args.format != "csv") {
                if (envcf_write_svg(a.analysis, ENVCF_SVG_CIRCLES | ENVCF_SVG_CENTER,
                                    (stem + "_family.svg").c_str()) != ENVCF_OK)
                    die("writing family SVG");
            }
        }
        return 0;
    }

    if (cmd_envelope->parsed()) {
        Analysis a;
        open_analysis(envelope_args, random_creators, seed, &a);
        if (envcf_classification(a.analysis) == ENVCF_NOT_CREATIVE) {
            char* text = nullptr;
            const envcf_status report_st = envcf_report_text(a.analysis, &text);
            print_text(report_st, text, "report");
            std::fprintf(stderr, "envcf: family creates no envelopes\n");
            return 1;
        }
        char* text = nullptr;
        const envcf_status verify_st = envcf_verify_text(a.analysis, &text);
        print_text(verify_st, text, "verification");
        const std::string dir = output_dir(envelope_args);
        if (!dir.empty()) {
            ensure_dir(dir);
            const std::string stem = dir + "/" + stem_of(envelope_args.scenario, a.family);
            if (envelope_args.format != "svg")
                if (envcf_write_envelope_csv(a.analysis, (stem + "_envelope.csv").c_str()) !=
                    ENVCF_OK)
                    die("writing envelope CSV");
            if (envelope_args.format != "csv")
                if (envcf_write_svg(a.analysis,
                                    ENVCF_SVG_CIRCLES | ENVCF_SVG_CENTER | ENVCF_SVG_BRANCHES,
                                    (stem + "_envelope.svg").c_str()) != ENVCF_OK)
                    die("writing envelope SVG");
        }
        return 0;
    }

    if (cmd_discriminant->parsed()) {
        Analysis a;
        open_analysis(discriminant_args, 0, seed, &a);
        char* text = nullptr;
        const envcf_status report_st = envcf_report_text(a.analysis, &text);
        print_text(report_st, text, "report");
        const std::string dir = output_dir(discriminant_args);
        if (!dir.empty()) {
            ensure_dir(dir);
            const std::string stem = dir + "/" + stem_of(discriminant_args.scenario, a.family);
            if (discriminant_args.format != "svg")
                if (envcf_write_discriminant_csv(a.analysis,
                                                 (stem + "_discriminant.csv").c_str()) != ENVCF_OK)
                    die("writing discriminant CSV");
            if (discriminant_args.format != "csv")
                if (envcf_write_svg(a.analysis,
                                    ENVCF_SVG_CIRCLES | ENVCF_SVG_CENTER | ENVCF_SVG_BRANCHES |
                                        ENVCF_SVG_DISCRIMINANT,
                                    (stem + "_discriminant.svg").c_str()) != ENVCF_OK)
                    die("writing discriminant SVG");
        } else if (discriminant_args.format != "svg") {
            // No directory configured: still a useful dry run of the slices.
            if (envcf_write_discriminant_csv(a.analysis, "/dev/null") != ENVCF_OK)
                die("computing discriminant slices");
        }
        return 0;
    }

    if (cmd_e1->parsed()) {
        Analysis a;
        open_analysis(e1_args, 0, seed, &a);
        const std::string dir = output_dir(e1_args);
        std::string csv_path;
        if (!dir.empty() && e1_args.format != "svg") {
            ensure_dir(dir);
            csv_path = dir + "/" + stem_of(e1_args.scenario, a.family) + "_e1.csv";
        }
        char* text = nullptr;
        const envcf_status e1_st =
            envcf_e1_report(a.analysis, t0, &text, csv_path.empty() ? nullptr : csv_path.c_str());
        print_text(e1_st, text, "e1");
        return 0;
    }

    if (cmd_seismic->parsed()) {
        envcf_survey* survey = nullptr;
        const double* src = source_xy.size() == 2 ? source_xy.data() : nullptr;
        const int side_code = side.empty() ? -1 : (side == "lower" ? 0 : 1);
        if (envcf_survey_load(survey_csv.c_str(),
                              seismic_config.empty() ? nullptr : seismic_config.c_str(), src,
                              speed, side_code, &survey) != ENVCF_OK)
            die("loading survey '" + survey_csv + "'");
        envcf_options options;
        envcf_options_init(&options);
        options.samples = seismic_args.samples;
        envcf_seismic* seismic = nullptr;
        const envcf_status st = envcf_seismic_run(survey, &options, &seismic);
        if (st != ENVCF_OK) {
            envcf_survey_free(survey);
            die("seismic pipeline");
        }
        char* text = nullptr;
        const envcf_status report_st = envcf_seismic_report(seismic, &text);
        print_text(report_st, text, "seismic report");
        const std::string dir = output_dir(seismic_args);
        if (!dir.empty()) {
            ensure_dir(dir);
            const std::string stem =
                dir + "/" + std::filesystem::path(survey_csv).stem().string();
            if (seismic_args.format != "svg") {
                if (envcf_seismic_write_orthotomic_csv(seismic,
                                                       (stem + "_orthotomic.csv").c_str()) !=
                    ENVCF_OK)
                    die("writing orthotomic CSV");
                if (emit_reflector)
                    if (envcf_seismic_write_reflector_csv(seismic,
                                                          (stem + "_reflector.csv").c_str()) !=
                        ENVCF_OK)
                        die("writing reflector CSV");
            }
            if (seismic_args.format != "csv")
                if (envcf_seismic_write_svg(seismic, (stem + "_orthotomic.svg").c_str()) !=
                    ENVCF_OK)
                    die("writing seismic SVG");
        }
        envcf_seismic_free(seismic);
        envcf_survey_free(survey);
        return 0;
    }

    if (cmd_gallery->parsed()) {
        char* table = nullptr;
        int all_pass = 0;
        if (!gallery_out.empty()) ensure_dir(gallery_out);
        if (envcf_gallery_run(gallery_samples, gallery_out.empty() ? nullptr : gallery_out.c_str(),
                              &table, &all_pass) != ENVCF_OK)
            die("gallery");
        std::fputs(table, stdout);
        envcf_string_free(table);
        return all_pass ? 0 : 1;
    }

    return 0;
}
