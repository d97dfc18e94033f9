#include "iota/model_json.hpp"

#include <fstream>

#include <json.hpp>

namespace iota {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json vocab_to_json(const Vocabulary& v) {
  nlohmann::json j;
  j["image_count"] = v.image_count();
  j["labels"] = nlohmann::json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    j["labels"].push_back(
        {{"name", v.name(static_cast<int>(i))}, {"count", v.frequency(static_cast<int>(i))}});
  }
  return j;
}

std::shared_ptr<const Vocabulary> vocab_from_json(const nlohmann::json& j) {
  std::vector<std::string> labels;
  std::vector<std::int64_t> counts;
  for (const auto& lj : j.at("labels")) {
    labels.push_back(lj.at("name").get<std::string>());
    counts.push_back(lj.at("count").get<std::int64_t>());
  }
  return std::make_shared<Vocabulary>(std::move(labels), std::move(counts),
                                      j.at("image_count").get<std::int64_t>());
}

}  // namespace

std::string model_to_json(const TreeMixture& mixture) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["alpha"] = mixture.options.alpha;
  j["seed"] = mixture.options.seed;
  j["tree_count"] = mixture.options.tree_count;
  j["min_count"] = mixture.options.min_count;
  j["bootstrap_fraction"] = mixture.options.bootstrap_fraction;
  j["bootstrap"] = mixture.options.bootstrap;
  j["shared_vocabulary"] = mixture.options.shared_vocabulary;
  j["vocabulary"] = vocab_to_json(*mixture.full_vocab);
  j["trees"] = nlohmann::json::array();
  for (const auto& tree : mixture.trees) {
    nlohmann::json tj;
    tj["vocabulary"] = vocab_to_json(tree.vocab());
    tj["root"] = tree.root();
    tj["edges"] = nlohmann::json::array();
    for (const auto& e : tree.edges()) {
      tj["edges"].push_back({{"a", e.a},
                             {"b", e.b},
                             {"counts",
                              {{e.counts[0][0], e.counts[0][1]},
                               {e.counts[1][0], e.counts[1][1]}}}});
    }
    j["trees"].push_back(std::move(tj));
  }
  return j.dump(2);
}

TreeMixture model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model JSON: ") + e.what(), 1);
  }
  try {
    if (j.at("format_version").get<int>() != kFormatVersion)
      throw Error("unsupported model format_version");
    TreeMixture mix;
    mix.options.alpha = j.at("alpha").get<double>();
    mix.options.seed = j.at("seed").get<std::uint64_t>();
    mix.options.tree_count = j.at("tree_count").get<int>();
    mix.options.min_count = j.at("min_count").get<std::int64_t>();
    mix.options.bootstrap_fraction = j.at("bootstrap_fraction").get<double>();
    mix.options.bootstrap = j.value("bootstrap", true);
    mix.options.shared_vocabulary = j.at("shared_vocabulary").get<bool>();
    mix.full_vocab = vocab_from_json(j.at("vocabulary"));
    const double alpha = mix.options.alpha;
    for (const auto& tj : j.at("trees")) {
      auto vocab = vocab_from_json(tj.at("vocabulary"));
      const double n = static_cast<double>(vocab->image_count());
      const double denom = n + 4.0 * alpha;
      std::vector<EdgeJoint> edges;
      for (const auto& ej : tj.at("edges")) {
        EdgeJoint e;
        e.a = ej.at("a").get<int>();
        e.b = ej.at("b").get<int>();
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) {
            e.counts[x][y] = ej.at("counts").at(x).at(y).get<double>();
            e.prob[x][y] = (e.counts[x][y] + alpha) / denom;
          }
        PairJoint pj;
        pj.counts = e.counts;
        pj.prob = e.prob;
        for (int x = 0; x < 2; ++x) {
          pj.marginal_i[x] = e.prob[x][0] + e.prob[x][1];
          pj.marginal_j[x] = e.prob[0][x] + e.prob[1][x];
        }
        e.mi = mutual_information(pj);
        edges.push_back(e);
      }
      std::array<double, 2> single = {0.5, 0.5};
      if (vocab->size() == 1) {
        const double f = static_cast<double>(vocab->frequency(0));
        single = {(n - f + 2.0 * alpha) / denom, (f + 2.0 * alpha) / denom};
      }
      mix.trees.emplace_back(std::move(vocab), std::move(edges),
                             tj.at("root").get<int>(), single);
    }
    mix.refresh_scores();
    return mix;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model JSON: ") + e.what(), 1);
  }
}

void save_model(const TreeMixture& mixture, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model: " + path);
  out << model_to_json(mixture) << '\n';
}

TreeMixture load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace iota
