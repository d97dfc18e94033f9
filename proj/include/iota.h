/* C API for the iota library: tree-structured label informativeness models.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return IOTA_OK on success; on failure, iota_last_error() holds a
 * thread-local description of the most recent error. */

#ifndef IOTA_H
#define IOTA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IOTA_API __declspec(dllexport)
#else
#define IOTA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iota_status {
  IOTA_OK = 0,
  IOTA_ERROR_IO = 1,
  IOTA_ERROR_PARSE = 2,
  IOTA_ERROR_INVALID_ARGUMENT = 3,
  IOTA_ERROR_INTERNAL = 4,
} iota_status;

IOTA_API const char* iota_status_name(iota_status status);

/* Message for the most recent failing call on this thread. */
IOTA_API const char* iota_last_error(void);

typedef struct iota_corpus_s iota_corpus;
typedef struct iota_model_s iota_model;
typedef struct iota_ratings_s iota_ratings;

/* ---- corpora ---- */

/* CSV with header image_id,label,confidence,verified. */
IOTA_API iota_status iota_corpus_open(const char* csv_path, iota_corpus** out);

/* Samples n_images from a tree-spec JSON file. */
IOTA_API iota_status iota_corpus_synthesize(const char* spec_json_path,
                                            uint64_t n_images, uint64_t seed,
                                            iota_corpus** out);

IOTA_API iota_status iota_corpus_write_csv(const iota_corpus* corpus,
                                           const char* csv_path);

IOTA_API uint64_t iota_corpus_image_count(const iota_corpus* corpus);

IOTA_API void iota_corpus_close(iota_corpus* corpus);

/* ---- models ---- */

typedef struct iota_build_options {
  uint32_t tree_count;        /* default 10 */
  int64_t min_count;          /* default 100 */
  double alpha;               /* default 0.5 */
  double bootstrap_fraction;  /* default 1.0 */
  uint64_t seed;              /* default 0 */
  int shared_vocabulary;      /* default 0: per-sample vocabularies */
  int bootstrap;              /* default 1; 0 = every tree on full corpus */
} iota_build_options;

IOTA_API void iota_build_options_init(iota_build_options* options);

IOTA_API iota_status iota_model_build(const iota_corpus* corpus,
                                      const iota_build_options* options,
                                      iota_model** out);

IOTA_API iota_status iota_model_save(const iota_model* model, const char* path);
IOTA_API iota_status iota_model_open(const char* path, iota_model** out);

IOTA_API uint32_t iota_model_vocabulary_size(const iota_model* model);
IOTA_API uint32_t iota_model_tree_count(const iota_model* model);
IOTA_API uint32_t iota_model_tree_edge_count(const iota_model* model, uint32_t tree);

/* CSV parent,child,mi_bits for one tree. */
IOTA_API iota_status iota_model_export_edges_csv(const iota_model* model,
                                                 uint32_t tree, const char* path);

/* CSV label,delta_h_bits,h_conditional_bits,kl_bits,image_delta_h_bits,
 * singleton_bits,marginal. */
IOTA_API iota_status iota_model_export_scores_csv(const iota_model* model,
                                                  const char* path);

IOTA_API void iota_model_close(iota_model* model);

/* ---- ranking ---- */

/* methods: comma-separated list of method names, NULL or "" for all.
 * Output CSV: image_id,method,rank,label,score,confidence. */
IOTA_API iota_status iota_rank(const iota_model* model, const iota_corpus* corpus,
                               const char* methods, uint32_t k_max, uint64_t seed,
                               const char* out_csv_path);

/* ---- evaluation ---- */

/* CSV with header image_id,rater1,rater2,rater3. */
IOTA_API iota_status iota_ratings_open(const char* path, iota_ratings** out);
IOTA_API void iota_ratings_close(iota_ratings* ratings);

typedef struct iota_eval_options {
  int noisy;           /* default 0: clean setup */
  int multilabel;      /* default 0: majority-vote ground truth */
  uint32_t k_max;      /* default 10 */
  uint64_t seed;       /* default 0 */
  const char* methods; /* comma-separated, NULL or "" for all */
} iota_eval_options;

IOTA_API void iota_eval_options_init(iota_eval_options* options);

/* Writes report CSV (method,setup,k,precision,recall,n_images). When
 * summary_text is non-NULL it receives a human-readable table; free it with
 * iota_string_free. */
IOTA_API iota_status iota_evaluate(const iota_model* model, const iota_corpus* corpus,
                                   const iota_ratings* ratings,
                                   const iota_eval_options* options,
                                   const char* report_csv_path, char** summary_text);

IOTA_API void iota_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* IOTA_H */
