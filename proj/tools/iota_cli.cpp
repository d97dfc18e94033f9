// Command-line front end for the iota shared library. Links only the C API.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iota.h"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;

int exit_code_for(iota_status status) {
  switch (status) {
    case IOTA_OK: return 0;
    case IOTA_ERROR_INTERNAL: return kExitInternal;
    default: return kExitBadInput;
  }
}

// Checks a status, printing the library error and exiting on failure.
void check(iota_status status, const char* what) {
  if (status == IOTA_OK) return;
  std::fprintf(stderr, "error: %s: %s (%s)\n", what, iota_last_error(),
               iota_status_name(status));
  std::exit(exit_code_for(status));
}

struct Config {
  std::string annotations;
  std::string ratings;
  std::string model;
  std::string output;
  std::string spec;
  std::string methods;
  std::string setup = "clean";
  std::string mode = "majority";
  std::string axis = "trees";
  std::vector<std::int64_t> values;
  std::int64_t min_count = 100;
  std::uint32_t trees = 10;
  double alpha = 0.5;
  double fraction = 1.0;
  std::uint64_t seed = 0;
  std::uint32_t k_max = 10;
  std::uint64_t n_images = 1000;
  bool shared_vocab = false;
  bool no_bootstrap = false;
};

// JSON config file, overridable by flags.
void apply_config_file(const std::string& path, Config* cfg) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open config file: %s\n", path.c_str());
    std::exit(kExitBadInput);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: bad config JSON: %s\n", e.what());
    std::exit(kExitBadInput);
  }
  auto get = [&](const char* key, auto* out) {
    if (j.contains(key)) *out = j[key].template get<std::decay_t<decltype(*out)>>();
  };
  get("annotations", &cfg->annotations);
  get("ratings", &cfg->ratings);
  get("model", &cfg->model);
  get("output", &cfg->output);
  get("methods", &cfg->methods);
  get("setup", &cfg->setup);
  get("mode", &cfg->mode);
  get("min_count", &cfg->min_count);
  get("trees", &cfg->trees);
  get("alpha", &cfg->alpha);
  get("fraction", &cfg->fraction);
  get("seed", &cfg->seed);
  get("k_max", &cfg->k_max);
  get("shared_vocabulary", &cfg->shared_vocab);
}

iota_corpus* open_corpus(const std::string& path) {
  iota_corpus* corpus = nullptr;
  check(iota_corpus_open(path.c_str(), &corpus), "loading annotations");
  return corpus;
}

iota_build_options build_options(const Config& cfg) {
  iota_build_options opt;
  iota_build_options_init(&opt);
  opt.tree_count = cfg.trees;
  opt.min_count = cfg.min_count;
  opt.alpha = cfg.alpha;
  opt.bootstrap_fraction = cfg.fraction;
  opt.seed = cfg.seed;
  opt.shared_vocabulary = cfg.shared_vocab ? 1 : 0;
  opt.bootstrap = cfg.no_bootstrap ? 0 : 1;
  return opt;
}

int cmd_build(const Config& cfg) {
  auto start = std::chrono::steady_clock::now();
  iota_corpus* corpus = open_corpus(cfg.annotations);
  iota_model* model = nullptr;
  iota_build_options opt = build_options(cfg);
  check(iota_model_build(corpus, &opt, &model), "building model");
  check(iota_model_save(model, cfg.output.c_str()), "saving model");
  auto elapsed = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start);
  std::printf("vocabulary: %u labels\n", iota_model_vocabulary_size(model));
  for (std::uint32_t t = 0; t < iota_model_tree_count(model); ++t)
    std::printf("tree %u: %u edges\n", t, iota_model_tree_edge_count(model, t));
  std::printf("build time: %.2fs\n", elapsed.count());
  std::printf("model written to %s\n", cfg.output.c_str());
  iota_model_close(model);
  iota_corpus_close(corpus);
  return 0;
}

int cmd_rank(const Config& cfg, bool seed_given) {
  bool uses_confidence =
      cfg.methods.empty() || cfg.methods.find("confidence") != std::string::npos;
  if (uses_confidence && !seed_given) {
    std::fprintf(stderr,
                 "error: --seed is required when ranking with the confidence "
                 "method (random tie-breaking)\n");
    return kExitBadInput;
  }
  iota_model* model = nullptr;
  check(iota_model_open(cfg.model.c_str(), &model), "loading model");
  iota_corpus* corpus = open_corpus(cfg.annotations);
  check(iota_rank(model, corpus, cfg.methods.empty() ? nullptr : cfg.methods.c_str(),
                  cfg.k_max, cfg.seed, cfg.output.c_str()),
        "ranking");
  std::printf("rankings written to %s\n", cfg.output.c_str());
  iota_corpus_close(corpus);
  iota_model_close(model);
  return 0;
}

iota_eval_options eval_options(const Config& cfg) {
  iota_eval_options opt;
  iota_eval_options_init(&opt);
  opt.noisy = cfg.setup == "noisy" ? 1 : 0;
  opt.multilabel = cfg.mode == "multilabel" ? 1 : 0;
  opt.k_max = cfg.k_max;
  opt.seed = cfg.seed;
  opt.methods = cfg.methods.empty() ? nullptr : cfg.methods.c_str();
  return opt;
}

int cmd_eval(const Config& cfg) {
  iota_model* model = nullptr;
  check(iota_model_open(cfg.model.c_str(), &model), "loading model");
  iota_corpus* corpus = open_corpus(cfg.annotations);
  iota_ratings* ratings = nullptr;
  check(iota_ratings_open(cfg.ratings.c_str(), &ratings), "loading ratings");

  std::string stem = cfg.output + "/report_" + cfg.setup + "_" + cfg.mode;
  std::string report_path = stem + ".csv";
  std::string summary_path = stem + ".txt";
  iota_eval_options opt = eval_options(cfg);
  char* summary = nullptr;
  check(iota_evaluate(model, corpus, ratings, &opt, report_path.c_str(), &summary),
        "evaluating");
  std::printf("%s", summary);
  std::ofstream(summary_path, std::ios::binary) << summary;
  iota_string_free(summary);
  std::printf("report written to %s\n", report_path.c_str());

  iota_ratings_close(ratings);
  iota_corpus_close(corpus);
  iota_model_close(model);
  return 0;
}

// Reads precision@1 per method back out of a report CSV.
std::vector<std::pair<std::string, double>> read_p_at_1(const std::string& path) {
  std::vector<std::pair<std::string, double>> out;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string method, setup, k, precision;
    std::getline(ss, method, ',');
    std::getline(ss, setup, ',');
    std::getline(ss, k, ',');
    std::getline(ss, precision, ',');
    if (k == "1") out.emplace_back(method, std::stod(precision));
  }
  return out;
}

int cmd_sweep(const Config& cfg) {
  if (cfg.values.empty()) {
    std::fprintf(stderr, "error: sweep needs --values\n");
    return kExitBadInput;
  }
  if (cfg.axis != "trees" && cfg.axis != "min-count") {
    std::fprintf(stderr, "error: sweep axis must be trees or min-count\n");
    return kExitBadInput;
  }
  iota_corpus* corpus = open_corpus(cfg.annotations);
  iota_ratings* ratings = nullptr;
  check(iota_ratings_open(cfg.ratings.c_str(), &ratings), "loading ratings");

  std::string out_path = cfg.output + "/sweep_" + cfg.axis + ".csv";
  std::ofstream out(out_path, std::ios::binary);
  out << "axis,value,vocab_size,method,p_at_1\n";
  for (std::int64_t value : cfg.values) {
    Config point = cfg;
    if (cfg.axis == "trees")
      point.trees = static_cast<std::uint32_t>(value);
    else
      point.min_count = value;
    iota_build_options opt = build_options(point);
    iota_model* model = nullptr;
    check(iota_model_build(corpus, &opt, &model), "building model");
    std::string report_path =
        cfg.output + "/sweep_" + cfg.axis + "_" + std::to_string(value) + ".csv";
    iota_eval_options eopt = eval_options(point);
    check(iota_evaluate(model, corpus, ratings, &eopt, report_path.c_str(), nullptr),
          "evaluating");
    for (const auto& [method, p1] : read_p_at_1(report_path)) {
      out << cfg.axis << ',' << value << ',' << iota_model_vocabulary_size(model)
          << ',' << method << ',' << p1 << '\n';
    }
    iota_model_close(model);
  }
  std::printf("sweep written to %s\n", out_path.c_str());
  iota_ratings_close(ratings);
  iota_corpus_close(corpus);
  return 0;
}

int cmd_synth(const Config& cfg) {
  iota_corpus* corpus = nullptr;
  check(iota_corpus_synthesize(cfg.spec.c_str(), cfg.n_images, cfg.seed, &corpus),
        "sampling synthetic corpus");
  check(iota_corpus_write_csv(corpus, cfg.output.c_str()), "writing corpus");
  std::printf("%llu images written to %s\n",
              static_cast<unsigned long long>(iota_corpus_image_count(corpus)),
              cfg.output.c_str());
  iota_corpus_close(corpus);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;

  // The config file provides defaults; explicit flags win.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") apply_config_file(argv[i + 1], &cfg);

  CLI::App app{"Label-informativeness models over annotation corpora"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file with default options");

  bool seed_given = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "RNG seed")->each([&](const std::string&) {
      seed_given = true;
    });
    cmd->add_option("--config", config_path, "JSON config file");
  };

  auto* build = app.add_subcommand("build", "Learn a tree-mixture model");
  build->add_option("--annotations", cfg.annotations, "annotation CSV")->required();
  build->add_option("--out", cfg.output, "output model JSON")->required();
  build->add_option("--min-count", cfg.min_count, "vocabulary frequency threshold");
  build->add_option("--trees", cfg.trees, "number of trees in the mixture");
  build->add_option("--alpha", cfg.alpha, "additive smoothing pseudo-count");
  build->add_option("--fraction", cfg.fraction, "bootstrap sample fraction");
  build->add_flag("--shared-vocab", cfg.shared_vocab,
                  "one global vocabulary for all trees");
  build->add_flag("--no-bootstrap", cfg.no_bootstrap,
                  "build every tree on the full corpus");
  add_common(build);

  auto* rank = app.add_subcommand("rank", "Rank image labels by informativeness");
  rank->add_option("--model", cfg.model, "model JSON")->required();
  rank->add_option("--annotations", cfg.annotations, "annotation CSV")->required();
  rank->add_option("--out", cfg.output, "output ranking CSV")->required();
  rank->add_option("--methods", cfg.methods, "comma-separated scoring methods");
  rank->add_option("--k-max", cfg.k_max, "ranks kept per image");
  add_common(rank);

  auto* eval = app.add_subcommand("eval", "Precision/recall against rater ground truth");
  eval->add_option("--model", cfg.model, "model JSON")->required();
  eval->add_option("--annotations", cfg.annotations, "annotation CSV")->required();
  eval->add_option("--ratings", cfg.ratings, "ratings CSV")->required();
  eval->add_option("--out-dir", cfg.output, "output directory")->required();
  eval->add_option("--setup", cfg.setup, "clean|noisy")
      ->check(CLI::IsMember({"clean", "noisy"}));
  eval->add_option("--mode", cfg.mode, "majority|multilabel")
      ->check(CLI::IsMember({"majority", "multilabel"}));
  eval->add_option("--methods", cfg.methods, "comma-separated scoring methods");
  eval->add_option("--k-max", cfg.k_max, "maximum k");
  add_common(eval);

  auto* sweep = app.add_subcommand("sweep", "Robustness sweep over a hyperparameter");
  sweep->add_option("--annotations", cfg.annotations, "annotation CSV")->required();
  sweep->add_option("--ratings", cfg.ratings, "ratings CSV")->required();
  sweep->add_option("--out-dir", cfg.output, "output directory")->required();
  sweep->add_option("--axis", cfg.axis, "trees|min-count");
  sweep->add_option("--values", cfg.values, "axis values")->required()->delimiter(',');
  sweep->add_option("--setup", cfg.setup, "clean|noisy")
      ->check(CLI::IsMember({"clean", "noisy"}));
  sweep->add_option("--mode", cfg.mode, "majority|multilabel")
      ->check(CLI::IsMember({"majority", "multilabel"}));
  sweep->add_option("--methods", cfg.methods, "comma-separated scoring methods");
  sweep->add_option("--min-count", cfg.min_count, "vocabulary frequency threshold");
  sweep->add_option("--trees", cfg.trees, "number of trees");
  sweep->add_option("--alpha", cfg.alpha, "additive smoothing pseudo-count");
  sweep->add_option("--k-max", cfg.k_max, "maximum k");
  add_common(sweep);

  auto* synth = app.add_subcommand("synth", "Sample a synthetic corpus from a tree spec");
  synth->add_option("--spec", cfg.spec, "tree spec JSON")->required();
  synth->add_option("--n", cfg.n_images, "number of images");
  synth->add_option("--out", cfg.output, "output corpus CSV")->required();
  add_common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  if (build->parsed()) return cmd_build(cfg);
  if (rank->parsed()) return cmd_rank(cfg, seed_given);
  if (eval->parsed()) return cmd_eval(cfg);
  if (sweep->parsed()) return cmd_sweep(cfg);
  if (synth->parsed()) return cmd_synth(cfg);
  return kExitBadInput;
}
