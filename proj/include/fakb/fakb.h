/* fakb.h : C interface of the fuzzy argumentative knowledge-base engine
 *
 * All handles are opaque and freed with their matching *_free call. Calls
 * return FAKB_OK on success; on failure fakb_last_error() describes what
 * went wrong (thread-local). Strings returned through char** out-parameters
 * belong to the caller and are released with fakb_string_free().
 *
 ***************************************************************************
 *
 * Copyright 2026 the FAKB engine authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 ***************************************************************************/

#ifndef FAKB_H
#define FAKB_H

#include <stddef.h>

#if defined(_WIN32) || defined(_WIN64)
#define FAKB_API __declspec(dllexport)
#else
#define FAKB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fakb_status {
    FAKB_OK = 0,
    FAKB_ERR_PARSE = 1,            /* malformed input text, JSON or query */
    FAKB_ERR_IO = 2,               /* file system failure */
    FAKB_ERR_INCONSISTENT = 3,     /* data fails a consistency requirement */
    FAKB_ERR_PRECONDITION = 4,     /* operation called outside its contract */
    FAKB_ERR_NO_CONVERGENCE = 5,   /* fixpoint iteration exhausted its budget */
    FAKB_ERR_DOMAIN = 6,           /* value outside the operation's domain */
    FAKB_ERR_EXTRACTION = 7,       /* a backend task failed */
    FAKB_ERR_INVALID_ARGUMENT = 8, /* bad configuration or API usage */
    FAKB_ERR_INTERNAL = 9
} fakb_status;

typedef struct fakb_config fakb_config;
typedef struct fakb_fabox fakb_fabox;
typedef struct fakb_tbox fakb_tbox;

FAKB_API const char* fakb_version(void);

/* Message of the most recent failure on this thread; never NULL. */
FAKB_API const char* fakb_last_error(void);

FAKB_API void fakb_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

/* Defaults: epsilon 1e-6, max_iter 10000, theta 0, quadratic-energy. */
FAKB_API fakb_config* fakb_config_new(void);
FAKB_API void fakb_config_free(fakb_config* config);
FAKB_API fakb_status fakb_config_set_epsilon(fakb_config* config, double epsilon);
FAKB_API fakb_status fakb_config_set_max_iter(fakb_config* config, long max_iter);
FAKB_API fakb_status fakb_config_set_theta(fakb_config* config, double theta);
FAKB_API fakb_status fakb_config_set_semantics(fakb_config* config, const char* name);

/* ---- fact stores ------------------------------------------------------ */

FAKB_API fakb_status fakb_fabox_parse_text(const char* text, fakb_fabox** out);
FAKB_API fakb_status fakb_fabox_parse_json(const char* json_text, fakb_fabox** out);
/* A path ending in .json selects the JSON mirror, anything else the line
 * format. */
FAKB_API fakb_status fakb_fabox_load(const char* path, fakb_fabox** out);
FAKB_API void fakb_fabox_free(fakb_fabox* fabox);

FAKB_API fakb_status fakb_fabox_to_text(const fakb_fabox* fabox, char** out);
FAKB_API fakb_status fakb_fabox_to_json(const fakb_fabox* fabox, char** out);
FAKB_API fakb_status fakb_fabox_size(const fakb_fabox* fabox, size_t* out);

/* consistent receives 1/0; the JSON report lists violations and warnings. */
FAKB_API fakb_status fakb_fabox_check(const fakb_fabox* fabox, int* consistent, char** report_json);

FAKB_API fakb_status fakb_fabox_update_strengths(const fakb_fabox* fabox, const fakb_config* config,
                                                 fakb_fabox** out);

/* JSON: {converged, iterations, rows: [{argument, initial, final}]}. A
 * non-convergent run still returns FAKB_OK with converged = false and the
 * partial values. */
FAKB_API fakb_status fakb_fabox_strength_table(const fakb_fabox* fabox, const fakb_config* config,
                                               char** table_json);

FAKB_API fakb_status fakb_fabox_export_graph(const fakb_fabox* fabox, char** graph_json);

/* ---- ontologies -------------------------------------------------------- */

FAKB_API fakb_status fakb_tbox_parse_text(const char* text, fakb_tbox** out);
FAKB_API fakb_status fakb_tbox_load(const char* path, fakb_tbox** out);
FAKB_API void fakb_tbox_free(fakb_tbox* tbox);

/* valid receives 1/0; the report lists inclusions whose positive right-hand
 * side mentions a built-in name. */
FAKB_API fakb_status fakb_tbox_validate(const fakb_tbox* tbox, int* valid, char** report_json);

/* ---- reasoning --------------------------------------------------------- */

/* Fires the closed negative inclusions against the store; consistent
 * receives 1/0 and the JSON report carries violations with witnesses. */
FAKB_API fakb_status fakb_kb_check(const fakb_tbox* tbox, const fakb_fabox* fabox, int* consistent,
                                   char** report_json);

/* Rewrites the query against the ontology; one disjunct per line. */
FAKB_API fakb_status fakb_rewrite(const fakb_tbox* tbox, const char* query, char** out_text);

/* Certain answers with degrees, sorted by degree descending then tuple:
 * [{tuple: [...], degree: d}, ...]. Inconsistent knowledge bases are
 * refused with FAKB_ERR_INCONSISTENT. */
FAKB_API fakb_status fakb_query(const fakb_tbox* tbox, const fakb_fabox* fabox, const char* query,
                                const fakb_config* config, char** answers_json);

/* ---- extraction --------------------------------------------------------- */

/* Runs the mock-backed extraction pipeline on a fixture. Any output pointer
 * may be NULL when the caller does not need it. The summary counts
 * arguments, attacks, supports and entity facts. */
FAKB_API fakb_status fakb_extract(const char* fixture_json, const fakb_config* config,
                                  fakb_fabox** source, fakb_fabox** updated, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* FAKB_H */
