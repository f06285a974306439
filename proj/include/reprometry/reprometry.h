/* reprometry - reproducibility assessment for comparable evaluation
 * experiments. C interface of the shared library: opaque handles, integer
 * status codes, caller-freed strings.
 *
 * Every function returning repro_status leaves a diagnostic retrievable via
 * repro_last_error() on failure. Strings returned through char** are
 * allocated by the library and must be released with repro_string_free().
 */
#ifndef REPROMETRY_H
#define REPROMETRY_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum repro_status {
    REPRO_OK = 0,
    REPRO_E_VALIDATION = 1, /* bundle violates a structural invariant     */
    REPRO_E_GATE = 2,       /* strict-mode comparability refusal          */
    REPRO_E_PARSE = 3,      /* I/O, syntax, or schema error               */
    REPRO_E_DOMAIN = 4,     /* measure precondition violated              */
    REPRO_E_ARG = 5         /* null handle or invalid argument            */
} repro_status;

typedef enum repro_format {
    REPRO_FORMAT_JSON = 0,     /* canonical machine-readable form */
    REPRO_FORMAT_DELIMITED = 1,
    REPRO_FORMAT_MARKDOWN = 2
} repro_format;

typedef enum repro_mode {
    REPRO_MODE_LENIENT = 0,
    REPRO_MODE_STRICT = 1
} repro_mode;

typedef struct repro_bundle repro_bundle;
typedef struct repro_assessment repro_assessment;
typedef struct repro_partition repro_partition;

typedef struct repro_assess_options {
    int mode;                /* repro_mode */
    double confidence_level; /* for CV* standard-deviation intervals */
    int exclude_tied_pairs;  /* drop tied sign pairs from P          */
    int study_p_average;     /* average per-QC P instead of pooling  */
    int prefer_fleiss;       /* Fleiss's kappa even for 2 raters     */
    int cv_decimals;         /* display precision, -1 for defaults   */
    int corr_decimals;
    int p_decimals;
} repro_assess_options;

void repro_assess_options_init(repro_assess_options* options);

/* --- bundles ----------------------------------------------------------- */

repro_status repro_bundle_parse_file(const char* path, repro_bundle** out);
repro_status repro_bundle_parse_text(const char* text, repro_bundle** out);
void repro_bundle_free(repro_bundle* bundle);

/* Canonical text form of the bundle. */
repro_status repro_bundle_serialize(const repro_bundle* bundle, char** out_text);

/* Structural validation. REPRO_OK and *out_findings = NULL when clean;
 * REPRO_E_VALIDATION with a newline-separated findings list otherwise. */
repro_status repro_bundle_validate(const repro_bundle* bundle, char** out_findings);

/* Similarity of measurement conditions, one block per comparable group. */
repro_status repro_bundle_similarity(const repro_bundle* bundle, char** out_text);

/* --- partitioning ------------------------------------------------------ */

/* Groups experiments by the values they carry on the comma-separated
 * property keys (schema keys or x.* extensions). */
repro_status repro_bundle_partition(const repro_bundle* bundle, const char* keys_csv,
                                    repro_partition** out);
int repro_partition_count(const repro_partition* partition);
int repro_partition_group_size(const repro_partition* partition, int index);
repro_status repro_partition_label(const repro_partition* partition, int index, char** out);
repro_status repro_partition_members(const repro_partition* partition, int index, char** out);
repro_status repro_partition_bundle(const repro_partition* partition, int index,
                                    repro_bundle** out);
/* One bundle pooling every group smaller than min_size (the experiments that
 * share their key values with no other experiment). REPRO_E_DOMAIN when no
 * such experiments exist. */
repro_status repro_partition_remainder(const repro_partition* partition, int min_size,
                                       repro_bundle** out);
void repro_partition_free(repro_partition* partition);

/* --- assessment -------------------------------------------------------- */

repro_status repro_assess(const repro_bundle* bundle, const repro_assess_options* options,
                          repro_assessment** out);
repro_status repro_assessment_render(const repro_assessment* assessment, int format,
                                     char** out_text);
void repro_assessment_free(repro_assessment* assessment);

/* --- utilities --------------------------------------------------------- */

/* Message for the most recent failure on this thread; never NULL. */
const char* repro_last_error(void);
void repro_string_free(char* text);
const char* repro_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REPROMETRY_H */
