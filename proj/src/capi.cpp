#include "iota.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "iota/eval.hpp"
#include "iota/model_json.hpp"
#include "iota/scoring.hpp"
#include "iota/synthetic.hpp"
#include "iota/tree.hpp"

struct iota_corpus_s {
  iota::AnnotationCorpus corpus;
};

struct iota_model_s {
  iota::TreeMixture mixture;
};

struct iota_ratings_s {
  iota::RatingsSet ratings;
};

namespace {

thread_local std::string g_last_error;

iota_status fail(iota_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
iota_status guarded(Fn&& fn) {
  try {
    fn();
    return IOTA_OK;
  } catch (const iota::ParseError& e) {
    return fail(IOTA_ERROR_PARSE, e.what());
  } catch (const iota::IoError& e) {
    return fail(IOTA_ERROR_IO, e.what());
  } catch (const iota::InvalidArgument& e) {
    return fail(IOTA_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const iota::Error& e) {
    return fail(IOTA_ERROR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(IOTA_ERROR_INTERNAL, e.what());
  }
}

std::vector<iota::Method> parse_methods(const char* methods) {
  std::vector<iota::Method> out;
  if (!methods || !*methods) return out;  // empty: caller interprets as all
  std::stringstream ss{std::string(methods)};
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) out.push_back(iota::method_from_name(name));
  return out;
}

iota_status require(bool ok, const char* what) {
  if (ok) return IOTA_OK;
  return fail(IOTA_ERROR_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* iota_status_name(iota_status status) {
  switch (status) {
    case IOTA_OK: return "ok";
    case IOTA_ERROR_IO: return "io-error";
    case IOTA_ERROR_PARSE: return "parse-error";
    case IOTA_ERROR_INVALID_ARGUMENT: return "invalid-argument";
    case IOTA_ERROR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* iota_last_error(void) { return g_last_error.c_str(); }

iota_status iota_corpus_open(const char* csv_path, iota_corpus** out) {
  if (auto s = require(csv_path && out, "iota_corpus_open")) return s;
  return guarded([&] {
    auto* handle = new iota_corpus_s{iota::load_annotations(csv_path)};
    *out = handle;
  });
}

iota_status iota_corpus_synthesize(const char* spec_json_path, uint64_t n_images,
                                   uint64_t seed, iota_corpus** out) {
  if (auto s = require(spec_json_path && out, "iota_corpus_synthesize")) return s;
  return guarded([&] {
    auto spec = iota::TreeSpec::from_json_file(spec_json_path);
    auto* handle = new iota_corpus_s{
        iota::generate_synthetic_corpus(spec, n_images, seed)};
    *out = handle;
  });
}

iota_status iota_corpus_write_csv(const iota_corpus* corpus, const char* csv_path) {
  if (auto s = require(corpus && csv_path, "iota_corpus_write_csv")) return s;
  return guarded([&] { iota::write_annotations_csv(corpus->corpus, csv_path); });
}

uint64_t iota_corpus_image_count(const iota_corpus* corpus) {
  return corpus ? corpus->corpus.image_count() : 0;
}

void iota_corpus_close(iota_corpus* corpus) { delete corpus; }

void iota_build_options_init(iota_build_options* options) {
  if (!options) return;
  options->tree_count = 10;
  options->min_count = 100;
  options->alpha = 0.5;
  options->bootstrap_fraction = 1.0;
  options->seed = 0;
  options->shared_vocabulary = 0;
  options->bootstrap = 1;
}

iota_status iota_model_build(const iota_corpus* corpus,
                             const iota_build_options* options, iota_model** out) {
  if (auto s = require(corpus && options && out, "iota_model_build")) return s;
  return guarded([&] {
    iota::MixtureOptions opt;
    opt.tree_count = static_cast<int>(options->tree_count);
    opt.min_count = options->min_count;
    opt.alpha = options->alpha;
    opt.bootstrap_fraction = options->bootstrap_fraction;
    opt.seed = options->seed;
    opt.shared_vocabulary = options->shared_vocabulary != 0;
    opt.bootstrap = options->bootstrap != 0;
    auto* handle = new iota_model_s{iota::build_mixture(corpus->corpus, opt)};
    *out = handle;
  });
}

iota_status iota_model_save(const iota_model* model, const char* path) {
  if (auto s = require(model && path, "iota_model_save")) return s;
  return guarded([&] { iota::save_model(model->mixture, path); });
}

iota_status iota_model_open(const char* path, iota_model** out) {
  if (auto s = require(path && out, "iota_model_open")) return s;
  return guarded([&] {
    auto* handle = new iota_model_s{iota::load_model(path)};
    *out = handle;
  });
}

uint32_t iota_model_vocabulary_size(const iota_model* model) {
  return model ? static_cast<uint32_t>(model->mixture.full_vocab->size()) : 0;
}

uint32_t iota_model_tree_count(const iota_model* model) {
  return model ? static_cast<uint32_t>(model->mixture.trees.size()) : 0;
}

uint32_t iota_model_tree_edge_count(const iota_model* model, uint32_t tree) {
  if (!model || tree >= model->mixture.trees.size()) return 0;
  return static_cast<uint32_t>(model->mixture.trees[tree].edges().size());
}

iota_status iota_model_export_edges_csv(const iota_model* model, uint32_t tree,
                                        const char* path) {
  if (auto s = require(model && path, "iota_model_export_edges_csv")) return s;
  return guarded([&] {
    if (tree >= model->mixture.trees.size())
      throw iota::InvalidArgument("tree index out of range");
    model->mixture.trees[tree].export_edges_csv(path);
  });
}

iota_status iota_model_export_scores_csv(const iota_model* model, const char* path) {
  if (auto s = require(model && path, "iota_model_export_scores_csv")) return s;
  return guarded([&] { model->mixture.export_scores_csv(path); });
}

void iota_model_close(iota_model* model) { delete model; }

iota_status iota_rank(const iota_model* model, const iota_corpus* corpus,
                      const char* methods, uint32_t k_max, uint64_t seed,
                      const char* out_csv_path) {
  if (auto s = require(model && corpus && out_csv_path, "iota_rank")) return s;
  return guarded([&] {
    auto list = parse_methods(methods);
    if (list.empty()) list = iota::all_methods();
    iota::write_rankings_csv(model->mixture, corpus->corpus, list, k_max, seed,
                             out_csv_path);
  });
}

iota_status iota_ratings_open(const char* path, iota_ratings** out) {
  if (auto s = require(path && out, "iota_ratings_open")) return s;
  return guarded([&] {
    auto* handle = new iota_ratings_s{iota::load_ratings(path)};
    *out = handle;
  });
}

void iota_ratings_close(iota_ratings* ratings) { delete ratings; }

void iota_eval_options_init(iota_eval_options* options) {
  if (!options) return;
  options->noisy = 0;
  options->multilabel = 0;
  options->k_max = 10;
  options->seed = 0;
  options->methods = nullptr;
}

iota_status iota_evaluate(const iota_model* model, const iota_corpus* corpus,
                          const iota_ratings* ratings,
                          const iota_eval_options* options,
                          const char* report_csv_path, char** summary_text) {
  if (auto s = require(model && corpus && ratings && options && report_csv_path,
                       "iota_evaluate"))
    return s;
  return guarded([&] {
    iota::EvalOptions opt;
    opt.noisy = options->noisy != 0;
    opt.mode = options->multilabel ? iota::GtMode::Multilabel : iota::GtMode::Majority;
    opt.k_max = options->k_max;
    opt.seed = options->seed;
    opt.methods = parse_methods(options->methods);
    iota::EvalReport report =
        iota::evaluate(model->mixture, corpus->corpus, ratings->ratings, opt);
    iota::write_report_csv(report, report_csv_path);
    if (summary_text) {
      std::string summary = iota::report_summary(report);
      char* buf = static_cast<char*>(std::malloc(summary.size() + 1));
      std::memcpy(buf, summary.c_str(), summary.size() + 1);
      *summary_text = buf;
    }
  });
}

void iota_string_free(char* s) { std::free(s); }

}  // extern "C"
