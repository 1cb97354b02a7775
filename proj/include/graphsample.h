/*
 * graphsample — C API for sampling graphs with fixed degree sequence and
 * for exact analysis of the switch and Curveball Markov chains.
 *
 * All functions return a gsu_status; on failure gsu_last_error() holds a
 * human-readable message for the calling thread. Strings returned through
 * char** parameters are owned by the caller and must be released with
 * gsu_string_free(). Degree sequences are opaque handles released with
 * gsu_degseq_free().
 */
#ifndef GRAPHSAMPLE_H
#define GRAPHSAMPLE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gsu_status {
    GSU_OK = 0,
    GSU_ERR_USAGE = 1,      /* bad arguments or malformed input */
    GSU_ERR_INFEASIBLE = 2, /* degree sequence has no realization */
    GSU_ERR_CAP = 3,        /* enumeration or search cap exceeded */
    GSU_ERR_VERIFY = 4,     /* a structural verification check failed */
    GSU_ERR_INTERNAL = 5
} gsu_status;

typedef enum gsu_chain {
    GSU_CHAIN_SWITCH = 0,
    GSU_CHAIN_CURVEBALL = 1
} gsu_chain;

typedef enum gsu_format {
    GSU_FORMAT_JSON = 0,
    GSU_FORMAT_CSV = 1
} gsu_format;

typedef enum gsu_mixing_mode {
    GSU_MIXING_ORIGINAL = 0, /* tau: one-point starts on the full space */
    GSU_MIXING_PROJECTED = 1,/* tau-bar: projected chain on classes */
    GSU_MIXING_LIFTED = 2    /* tau-hat: class-uniform starts, full space */
} gsu_mixing_mode;

typedef struct gsu_degseq gsu_degseq;

/* Last error message of the current thread; empty string when none. */
const char* gsu_last_error(void);

void gsu_string_free(char* s);
void gsu_degseq_free(gsu_degseq* k);

/* {"kind": "bipartite|undirected|directed", "rows": [...], "cols": [...]} */
gsu_status gsu_degseq_parse(const char* json_text, gsu_degseq** out);
gsu_status gsu_degseq_to_json(const gsu_degseq* k, char** out);

/* Margins of a matrix in the text format "n n' kind" + 0/1 rows. */
gsu_status gsu_degseq_from_matrix_text(const char* text, gsu_degseq** out);

/* Named bipartite families: id "5.1" (hub pair, param n >= 2) or
 * id "5.2" (double star, param l >= 1). */
gsu_status gsu_family(const char* id, long param, gsu_degseq** out);

/* Reports; all JSON output carries a "schema" field. */
gsu_status gsu_enumerate_report(const gsu_degseq* k, long cap, char** out);
gsu_status gsu_classes_report(const gsu_degseq* k, long cap, char** out);

/* Exact transition matrix of the chain; entries included when full != 0. */
gsu_status gsu_matrix_report(const gsu_degseq* k, gsu_chain chain, int full,
                             long cap, char** out);

/* Projected chain: lumpability deviation, class sizes, projected matrix
 * and its stationary distribution. */
gsu_status gsu_project_report(const gsu_degseq* k, gsu_chain chain, long cap,
                              char** out);

/* Exact mixing time at threshold eps. CSV output is the distance trace. */
gsu_status gsu_mixing_report(const gsu_degseq* k, gsu_chain chain, double eps,
                             gsu_mixing_mode mode, int full, gsu_format format,
                             long cap, char** out);

/* Eigenvalues, lambda*, spectral gap. CSV output is the eigenvalue list. */
gsu_status gsu_spectrum_report(const gsu_degseq* k, gsu_chain chain,
                               int projected, gsu_format format, long cap,
                               char** out);

/* `samples` independent replicas of `steps` chain steps from one greedy
 * realization; replica r is seeded from (seed, r). CSV rows are
 * "replica,state". */
gsu_status gsu_sample_report(const gsu_degseq* k, gsu_chain chain, long steps,
                             long samples, uint64_t seed, int preprocess,
                             gsu_format format, char** out);

/* One preprocessing step (degree-group relabelling) applied to a matrix in
 * text format; returns the relabelled matrix in the same format. */
gsu_status gsu_preprocess_matrix_text(const char* matrix_text, uint64_t seed,
                                      char** out);

/* Runs the structural check suite (lumpability, reversibility, detailed
 * balance, projection/lift identities, distance dominance, Monte Carlo
 * one-step frequencies). Returns GSU_ERR_VERIFY when any check fails;
 * the JSON report is produced either way. */
gsu_status gsu_verify_report(const gsu_degseq* k, long mc_trials, long cap,
                             uint64_t seed, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GRAPHSAMPLE_H */
