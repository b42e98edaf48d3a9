#ifndef MAJDYN_H
#define MAJDYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MAJDYN_BUILDING)
#    define MAJDYN_API __declspec(dllexport)
#  else
#    define MAJDYN_API __declspec(dllimport)
#  endif
#else
#  define MAJDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct majdyn_graph majdyn_graph;
typedef struct majdyn_coloring majdyn_coloring;
typedef struct majdyn_result majdyn_result;

typedef enum {
  MAJDYN_OK = 0,
  MAJDYN_E_INVALID_SIZE = 1,
  MAJDYN_E_INVALID_PARAMETER = 2,
  MAJDYN_E_UNDEFINED_PARTITION = 3,
  MAJDYN_E_SIZE_CAP = 4,
  MAJDYN_E_PARSE = 5,
  MAJDYN_E_IO = 6,
  MAJDYN_E_INTERNAL = 7
} majdyn_status;

typedef enum { MAJDYN_MM = 0, MAJDYN_RMM = 1 } majdyn_model;

MAJDYN_API const char* majdyn_version(void);
/* Message of the last failed call on this thread; "" if none. */
MAJDYN_API const char* majdyn_last_error(void);
/* "ok", "invalid-size", ... */
MAJDYN_API const char* majdyn_status_name(majdyn_status status);
/* Frees any char* returned through an out parameter. */
MAJDYN_API void majdyn_string_free(char* s);

/* ---- graphs ---- */

/* cycle:n, twocycle:n, cyclerand:n:seed, expstab:n, expperiod:n,
   double:<spec>, inline JSON, or a file (JSON or edge list). */
MAJDYN_API majdyn_status majdyn_graph_from_spec(const char* spec, majdyn_graph** out);
/* edges holds 2*m node ids. */
MAJDYN_API majdyn_status majdyn_graph_from_edges(size_t n, const uint32_t* edges, size_t m, majdyn_graph** out);
MAJDYN_API size_t majdyn_graph_nodes(const majdyn_graph* g);
MAJDYN_API size_t majdyn_graph_edge_count(const majdyn_graph* g);
MAJDYN_API majdyn_status majdyn_graph_to_json(const majdyn_graph* g, char** out);
MAJDYN_API majdyn_status majdyn_graph_to_edgelist(const majdyn_graph* g, char** out);
MAJDYN_API void majdyn_graph_free(majdyn_graph* g);

/* ---- colorings ---- */

/* Spec forms: extreme, alternating:<0|1>, bw:<string>, random:<p>,
   density:<k>, kalt:<k>, witness, expstab, blue, white, inline JSON, file.
   has_seed = 0 is rejected for the random forms. */
MAJDYN_API majdyn_status majdyn_coloring_from_spec(const majdyn_graph* g, const char* spec, int has_seed, uint64_t seed,
                                                   majdyn_coloring** out);
MAJDYN_API size_t majdyn_coloring_size(const majdyn_coloring* c);
MAJDYN_API size_t majdyn_coloring_blue_count(const majdyn_coloring* c);
/* 'B'/'W' per node. */
MAJDYN_API majdyn_status majdyn_coloring_to_string(const majdyn_coloring* c, char** out);
MAJDYN_API majdyn_status majdyn_coloring_to_json(const majdyn_coloring* c, char** out);
MAJDYN_API void majdyn_coloring_free(majdyn_coloring* c);

/* ---- simulation ---- */

typedef struct {
  majdyn_model model;
  /* Required for RMM. */
  int has_seed;
  uint64_t seed;
  /* 0 selects the model default (MM 4m, RMM 64n^2+64). */
  uint64_t max_rounds;
  /* JSONL trace of every round, or NULL. */
  const char* trace_path;
  /* Include the full coloring in each trace line. */
  int trace_colorings;
} majdyn_simulate_options;

MAJDYN_API void majdyn_simulate_options_init(majdyn_simulate_options* options);
MAJDYN_API majdyn_status majdyn_simulate(const majdyn_graph* g, const majdyn_coloring* c0,
                                         const majdyn_simulate_options* options, majdyn_result** out);
/* -1 when the run hit its cap or stayed undetermined. */
MAJDYN_API int64_t majdyn_result_rounds(const majdyn_result* r);
MAJDYN_API const char* majdyn_result_outcome(const majdyn_result* r);
MAJDYN_API majdyn_status majdyn_result_final(const majdyn_result* r, majdyn_coloring** out);
MAJDYN_API majdyn_status majdyn_result_to_json(const majdyn_result* r, char** out);
MAJDYN_API void majdyn_result_free(majdyn_result* r);

/* ---- exact analysis ---- */

typedef struct {
  majdyn_model model;
  /* Start coloring for "hitting"; NULL elsewhere. */
  const majdyn_coloring* coloring;
  /* Node set for "winning" and "resilient" (nodes:..., canonical, all, none,
     JSON, file). For "hitting" the target is the all-white coloring of this
     set, or of every node when NULL. */
  const char* set_spec;
  /* Node cap; 0 keeps the analysis default. */
  size_t max_nodes;
  /* "stable": also list the stable states. */
  int list;
  /* "winning": 1 for the exhaustive oracle. */
  int exhaustive;
} majdyn_analyze_options;

MAJDYN_API void majdyn_analyze_options_init(majdyn_analyze_options* options);
/* what: markov, stable, winning, min-winning, hitting, resilient.
   Writes a JSON document to *out_json. */
MAJDYN_API majdyn_status majdyn_analyze(const majdyn_graph* g, const char* what, const majdyn_analyze_options* options,
                                        char** out_json);

/* ---- experiments ---- */

typedef void (*majdyn_progress_fn)(const char* line, void* user);

/* Runs the experiment described by the JSON config file, writes its CSV and
   sidecar, and returns the sidecar document in *out_json. jobs = 0 uses every
   hardware thread. output_override may be NULL. */
MAJDYN_API majdyn_status majdyn_experiment_run(const char* config_path, unsigned jobs, const char* output_override,
                                               majdyn_progress_fn progress, void* user, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
