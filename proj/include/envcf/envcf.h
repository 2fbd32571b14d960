/* envcf — envelopes created by circle families in the plane.
 *
 * C API over the analysis engine: opaque handles, integer status codes,
 * thread-local error messages. Strings returned through char** are
 * heap-allocated; release them with envcf_string_free().
 */
#ifndef ENVCF_H
#define ENVCF_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum envcf_status {
    ENVCF_OK = 0,
    ENVCF_ERROR_PARSE = 1,
    ENVCF_ERROR_VALIDATE = 2,
    ENVCF_ERROR_DOMAIN = 3,
    ENVCF_ERROR_NOT_CREATIVE = 4,
    ENVCF_ERROR_DEGENERATE = 5,
    ENVCF_ERROR_IO = 6,
    ENVCF_ERROR_ARG = 7,
    ENVCF_ERROR_INTERNAL = 8
} envcf_status;

typedef enum envcf_class {
    ENVCF_NOT_CREATIVE = 0,
    ENVCF_UNIQUE = 1,
    ENVCF_EXACTLY_TWO = 2,
    ENVCF_UNCOUNTABLY_MANY = 3,
    ENVCF_AMBIGUOUS = 4
} envcf_class;

typedef struct envcf_family envcf_family;     /* scenario-backed circle family */
typedef struct envcf_analysis envcf_analysis; /* frame + creativity + envelopes */
typedef struct envcf_survey envcf_survey;     /* seismic records */
typedef struct envcf_seismic envcf_seismic;   /* recovered orthotomic + reflector */

typedef struct envcf_options {
    int samples;           /* grid size; <= 0 keeps the scenario/default 2001 */
    int windows;           /* classification windows; <= 0 keeps default 64 */
    double eps_beta;       /* singular cutoff override; <= 0 auto-scales */
    int random_creators;   /* extra creators on beta==0 subintervals */
    unsigned long long seed;
} envcf_options;

void envcf_options_init(envcf_options* options);

const char* envcf_version(void);
/* Message for the most recent failing call on this thread. */
const char* envcf_last_error(void);
void envcf_string_free(char* s);

/* --- families ----------------------------------------------------- */
envcf_status envcf_family_load(const char* path, envcf_family** out);
envcf_status envcf_family_parse(const char* scenario_text, envcf_family** out);
void envcf_family_free(envcf_family* family);
/* Scenario name ("" when unnamed); owned by the family handle. */
const char* envcf_family_name(const envcf_family* family);

/* --- analysis ------------------------------------------------------ */
envcf_status envcf_analyze(const envcf_family* family, const envcf_options* options,
                           envcf_analysis** out);
void envcf_analysis_free(envcf_analysis* analysis);

envcf_class envcf_classification(const envcf_analysis* analysis);
double envcf_witness_t(const envcf_analysis* analysis); /* NotCreative only */
int envcf_sample_count(const envcf_analysis* analysis);
int envcf_branch_count(const envcf_analysis* analysis); /* 0 when not creative */

/* Creativity report (status line + per-window table). */
envcf_status envcf_report_text(const envcf_analysis* analysis, char** out);
/* Residual verification summary over every branch. */
envcf_status envcf_verify_text(const envcf_analysis* analysis, char** out);

envcf_status envcf_write_creativity_csv(const envcf_analysis* analysis, const char* path);
envcf_status envcf_write_frontal_csv(const envcf_analysis* analysis, const char* path);
envcf_status envcf_write_envelope_csv(const envcf_analysis* analysis, const char* path);
envcf_status envcf_write_discriminant_csv(const envcf_analysis* analysis, const char* path);

/* Layer mask for SVG output. */
#define ENVCF_SVG_CIRCLES 1u
#define ENVCF_SVG_CENTER 2u
#define ENVCF_SVG_BRANCHES 4u
#define ENVCF_SVG_DISCRIMINANT 8u
envcf_status envcf_write_svg(const envcf_analysis* analysis, unsigned layers, const char* path);

/* E1 construction at t0: per-epsilon table text plus optional CSV. */
envcf_status envcf_e1_report(const envcf_analysis* analysis, double t0, char** text,
                             const char* csv_path_or_null);

/* --- gallery -------------------------------------------------------- */
/* Formats the seven-scenario gallery table; *all_pass receives 0/1.
 * out_dir, when non-NULL, receives per-example CSV and SVG artifacts. */
envcf_status envcf_gallery_run(int samples, const char* out_dir_or_null, char** table,
                               int* all_pass);

/* --- seismic --------------------------------------------------------- */
/* side: 0 lower half-plane (default), 1 upper. config_path may be NULL;
 * explicit arguments override config values. speed <= 0 means "from
 * config"; source_xy NULL means "from config". */
envcf_status envcf_survey_load(const char* csv_path, const char* config_path_or_null,
                               const double* source_xy_or_null, double speed, int side,
                               envcf_survey** out);
void envcf_survey_free(envcf_survey* survey);

envcf_status envcf_seismic_run(const envcf_survey* survey, const envcf_options* options,
                               envcf_seismic** out);
void envcf_seismic_free(envcf_seismic* seismic);

envcf_status envcf_seismic_report(const envcf_seismic* seismic, char** out);
envcf_status envcf_seismic_write_orthotomic_csv(const envcf_seismic* seismic, const char* path);
envcf_status envcf_seismic_write_reflector_csv(const envcf_seismic* seismic, const char* path);
envcf_status envcf_seismic_write_svg(const envcf_seismic* seismic, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ENVCF_H */
