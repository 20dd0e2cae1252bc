#ifndef GASSOC_GASSOC_H
#define GASSOC_GASSOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define GASSOC_API __attribute__((visibility("default")))
#else
#define GASSOC_API
#endif

typedef enum gassoc_status {
  GASSOC_OK = 0,
  GASSOC_ERR_INPUT = 1,
  GASSOC_ERR_VERIFY = 2,
  GASSOC_ERR_INTERNAL = 3
} gassoc_status;

typedef struct gassoc_graph gassoc_graph;
typedef struct gassoc_flipgraph gassoc_flipgraph;

/* Message of the last failed call on this thread; never NULL. */
GASSOC_API const char* gassoc_last_error(void);
/* Frees any string returned through a char** out parameter. */
GASSOC_API void gassoc_string_free(char* s);

/* Graphs. Text format: "n <count>" then one "u v" per line; JSON: {"n":k,"edges":[[u,v],...]}. */
GASSOC_API gassoc_status gassoc_graph_parse(const char* content, gassoc_graph** out);
GASSOC_API gassoc_status gassoc_graph_read(const char* path, gassoc_graph** out);
/* kind: path, cycle, complete, star, tk. */
GASSOC_API gassoc_status gassoc_graph_family(const char* kind, int n, int k, gassoc_graph** out);
GASSOC_API void gassoc_graph_free(gassoc_graph* g);
GASSOC_API int gassoc_graph_vertex_count(const gassoc_graph* g);
GASSOC_API int gassoc_graph_edge_count(const gassoc_graph* g);
GASSOC_API gassoc_status gassoc_graph_text(const gassoc_graph* g, char** out);
GASSOC_API gassoc_status gassoc_graph_json(const gassoc_graph* g, char** out);
/* JSON array of tubes, each a sorted vertex list. */
GASSOC_API gassoc_status gassoc_graph_tubes(const gassoc_graph* g, char** out);

/* Flip graphs. Tubings are exchanged in proper form, e.g. "[[0],[0,1]]". */
GASSOC_API gassoc_status gassoc_flipgraph_build(const gassoc_graph* g, gassoc_flipgraph** out);
GASSOC_API void gassoc_flipgraph_free(gassoc_flipgraph* f);
GASSOC_API int64_t gassoc_flipgraph_vertex_count(const gassoc_flipgraph* f);
GASSOC_API int64_t gassoc_flipgraph_edge_count(const gassoc_flipgraph* f);
GASSOC_API gassoc_status gassoc_flipgraph_find(const gassoc_flipgraph* f, const char* tubing, int* id);
GASSOC_API gassoc_status gassoc_flipgraph_tubing(const gassoc_flipgraph* f, int id, char** out);
GASSOC_API gassoc_status gassoc_flipgraph_json(const gassoc_flipgraph* f, char** out);
/* cycle may be NULL; its consecutive edges get a color attribute. */
GASSOC_API gassoc_status gassoc_flipgraph_dot(const gassoc_flipgraph* f, const int* cycle, size_t cycle_len,
                                              char** out);
GASSOC_API gassoc_status gassoc_flipgraph_diameter(const gassoc_flipgraph* f, int threads, int* out);
GASSOC_API gassoc_status gassoc_flipgraph_distance(const gassoc_flipgraph* f, int a, int b, int* out);
/* JSON {"paths":[[id,...],...],"truncated":bool}. */
GASSOC_API gassoc_status gassoc_flipgraph_geodesics(const gassoc_flipgraph* f, int a, int b, size_t limit,
                                                    char** out);

/* Hamiltonian cycle of F(G), optionally through two forced short flips given as
   ridges (a tubing missing one tube, in proper form). JSON result:
   {"length":k,"cycle":[tubing,...],"ids":[id,...],"method":"...","verified":bool}.
   ids index the flip graph built by gassoc_flipgraph_build on the same graph. */
GASSOC_API gassoc_status gassoc_hamiltonian(const gassoc_graph* g, const char* forced_first,
                                            const char* forced_second, int verify, char** out);

/* Verification suites: bounds, regular, monotone, sigma (graph suites take
   min_n..max_n vertices, or a single graph if g is not NULL) and snlfp
   (building sets on up to max_n elements). Returns GASSOC_ERR_VERIFY when a
   property fails; the JSON report is written in every non-input-error case. */
GASSOC_API gassoc_status gassoc_verify(const char* suite, const gassoc_graph* g, int min_n, int max_n, int threads,
                                       char** report);

/* CSV with header k,n_vertices,flip_vertices,diameter,seconds. */
GASSOC_API gassoc_status gassoc_experiment_tk_diameter(int max_k, int threads, char** csv);

#ifdef __cplusplus
}
#endif

#endif
