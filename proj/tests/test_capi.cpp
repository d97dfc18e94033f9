#include <doctest.h>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <iota.h>

#include "test_util.hpp"

namespace {

std::string spec_json() {
  return R"({
  "confidence": 1.0,
  "nodes": [
    {"label": "alpha", "parent": null, "p_true": 0.6},
    {"label": "beta", "parent": "alpha", "p_true_given_parent": [0.1, 0.9]},
    {"label": "gamma", "parent": "alpha", "p_true_given_parent": [0.7, 0.2]}
  ]
})";
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("c api: status names and error reporting") {
  CHECK(std::string(iota_status_name(IOTA_OK)) == "ok");
  CHECK(std::string(iota_status_name(IOTA_ERROR_IO)) == "io-error");
  CHECK(std::string(iota_status_name(IOTA_ERROR_PARSE)) == "parse-error");
  CHECK(std::string(iota_status_name(IOTA_ERROR_INVALID_ARGUMENT)) ==
        "invalid-argument");

  iota_corpus* corpus = nullptr;
  CHECK(iota_corpus_open("/nonexistent/x.csv", &corpus) == IOTA_ERROR_IO);
  CHECK(corpus == nullptr);
  CHECK(std::strlen(iota_last_error()) > 0);

  CHECK(iota_corpus_open(nullptr, &corpus) == IOTA_ERROR_INVALID_ARGUMENT);
  CHECK(iota_corpus_open("x", nullptr) == IOTA_ERROR_INVALID_ARGUMENT);

  auto bad = testutil::write_temp("bad.csv",
                                  "image_id,label,confidence\nimg,cat,2.5\n");
  CHECK(iota_corpus_open(bad.c_str(), &corpus) == IOTA_ERROR_PARSE);
  CHECK(std::string(iota_last_error()).find("line 2") != std::string::npos);
}

TEST_CASE("c api: full pipeline from synthesis to evaluation") {
  auto spec_path = testutil::write_temp("capi_spec.json", spec_json());

  iota_corpus* corpus = nullptr;
  REQUIRE(iota_corpus_synthesize(spec_path.c_str(), 2000, 7, &corpus) == IOTA_OK);
  REQUIRE(corpus != nullptr);
  CHECK(iota_corpus_image_count(corpus) == 2000);

  auto csv_path = testutil::write_temp("capi_corpus.csv", "");
  REQUIRE(iota_corpus_write_csv(corpus, csv_path.c_str()) == IOTA_OK);
  iota_corpus* reread = nullptr;
  REQUIRE(iota_corpus_open(csv_path.c_str(), &reread) == IOTA_OK);
  CHECK(iota_corpus_image_count(reread) <= 2000);  // empty images have no rows

  iota_build_options opt;
  iota_build_options_init(&opt);
  CHECK(opt.tree_count == 10);
  CHECK(opt.min_count == 100);
  CHECK(opt.alpha == 0.5);
  CHECK(opt.bootstrap == 1);
  opt.tree_count = 3;
  opt.min_count = 1;
  opt.seed = 11;

  iota_model* model = nullptr;
  REQUIRE(iota_model_build(corpus, &opt, &model) == IOTA_OK);
  CHECK(iota_model_vocabulary_size(model) == 3);
  CHECK(iota_model_tree_count(model) == 3);
  CHECK(iota_model_tree_edge_count(model, 0) == 2);
  CHECK(iota_model_tree_edge_count(model, 99) == 0);  // out of range

  auto model_path = testutil::write_temp("capi_model.json", "");
  REQUIRE(iota_model_save(model, model_path.c_str()) == IOTA_OK);
  iota_model* loaded = nullptr;
  REQUIRE(iota_model_open(model_path.c_str(), &loaded) == IOTA_OK);
  CHECK(iota_model_vocabulary_size(loaded) == 3);
  auto model_path2 = testutil::write_temp("capi_model2.json", "");
  REQUIRE(iota_model_save(loaded, model_path2.c_str()) == IOTA_OK);
  CHECK(read_all(model_path) == read_all(model_path2));  // byte-stable reload

  auto edges_path = testutil::write_temp("capi_edges.csv", "");
  REQUIRE(iota_model_export_edges_csv(model, 0, edges_path.c_str()) == IOTA_OK);
  CHECK(read_all(edges_path).rfind("parent,child,mi_bits\n", 0) == 0);
  CHECK(iota_model_export_edges_csv(model, 99, edges_path.c_str()) ==
        IOTA_ERROR_INVALID_ARGUMENT);

  auto scores_path = testutil::write_temp("capi_scores.csv", "");
  REQUIRE(iota_model_export_scores_csv(model, scores_path.c_str()) == IOTA_OK);

  auto rank_path = testutil::write_temp("capi_rank.csv", "");
  REQUIRE(iota_rank(model, reread, "cw-dh,confidence", 3, 5,
                    rank_path.c_str()) == IOTA_OK);
  CHECK(read_all(rank_path).rfind("image_id,method,rank,label,score,confidence\n",
                                  0) == 0);
  CHECK(iota_rank(model, reread, "no-such-method", 3, 5, rank_path.c_str()) ==
        IOTA_ERROR_INVALID_ARGUMENT);

  // Ratings naming the first label of the first few images.
  std::string ratings_csv = "image_id,rater1,rater2,rater3\n";
  {
    std::ifstream in(csv_path);
    std::string line;
    std::getline(in, line);
    int added = 0;
    std::string last_img;
    while (added < 20 && std::getline(in, line)) {
      auto comma = line.find(',');
      std::string img = line.substr(0, comma);
      if (img == last_img) continue;
      last_img = img;
      auto rest = line.substr(comma + 1);
      std::string label = rest.substr(0, rest.find(','));
      ratings_csv += img + "," + label + "," + label + ",\n";
      ++added;
    }
  }
  auto ratings_path = testutil::write_temp("capi_ratings.csv", ratings_csv);

  iota_ratings* ratings = nullptr;
  REQUIRE(iota_ratings_open(ratings_path.c_str(), &ratings) == IOTA_OK);

  iota_eval_options eopt;
  iota_eval_options_init(&eopt);
  CHECK(eopt.noisy == 0);
  CHECK(eopt.k_max == 10);
  eopt.noisy = 1;  // synthetic corpus has no verified flags
  eopt.k_max = 3;
  eopt.methods = "confidence,cw-dh";

  auto report_path = testutil::write_temp("capi_report.csv", "");
  char* summary = nullptr;
  REQUIRE(iota_evaluate(model, reread, ratings, &eopt, report_path.c_str(),
                        &summary) == IOTA_OK);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("cw-dh") != std::string::npos);
  iota_string_free(summary);
  CHECK(read_all(report_path).rfind("method,setup,k,precision,recall,n_images\n",
                                    0) == 0);

  iota_ratings_close(ratings);
  iota_model_close(loaded);
  iota_model_close(model);
  iota_corpus_close(reread);
  iota_corpus_close(corpus);
}

TEST_CASE("c api: null handles are rejected, close tolerates null") {
  iota_model* model = nullptr;
  CHECK(iota_model_build(nullptr, nullptr, &model) == IOTA_ERROR_INVALID_ARGUMENT);
  CHECK(iota_model_open("/nonexistent/model.json", &model) == IOTA_ERROR_IO);
  CHECK(iota_model_vocabulary_size(nullptr) == 0);
  CHECK(iota_model_tree_count(nullptr) == 0);
  CHECK(iota_corpus_image_count(nullptr) == 0);
  iota_corpus_close(nullptr);
  iota_model_close(nullptr);
  iota_ratings_close(nullptr);
  iota_string_free(nullptr);
}
