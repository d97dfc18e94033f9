#include "iota/synthetic.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace iota {

namespace {

void check_prob(double p, const std::string& where) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument("probability outside [0,1] in " + where);
}

}  // namespace

void TreeSpec::validate() const {
  if (nodes.empty()) throw InvalidArgument("synthetic spec has no nodes");
  if (nodes.size() > kMaxLabels)
    throw InvalidArgument("synthetic spec limited to " +
                          std::to_string(kMaxLabels) + " labels");
  check_prob(confidence, "confidence");
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.label.empty()) throw InvalidArgument("empty label in synthetic spec");
    if (!names.insert(n.label).second)
      throw InvalidArgument("duplicate label in synthetic spec: " + n.label);
    if (n.parent >= 0) {
      if (static_cast<std::size_t>(n.parent) >= nodes.size() ||
          n.parent == static_cast<int>(i))
        throw InvalidArgument("bad parent index for " + n.label);
      check_prob(n.p_true_given[0], n.label);
      check_prob(n.p_true_given[1], n.label);
    } else {
      check_prob(n.p_true, n.label);
    }
  }
  topological_order();  // throws on cycles
}

std::vector<int> TreeSpec::topological_order() const {
  const int d = static_cast<int>(nodes.size());
  std::vector<int> order;
  std::vector<char> placed(d, 0);
  order.reserve(d);
  bool progress = true;
  while (static_cast<int>(order.size()) < d && progress) {
    progress = false;
    for (int i = 0; i < d; ++i) {
      if (placed[i]) continue;
      int p = nodes[i].parent;
      if (p < 0 || placed[p]) {
        placed[i] = 1;
        order.push_back(i);
        progress = true;
      }
    }
  }
  if (static_cast<int>(order.size()) < d)
    throw InvalidArgument("cycle in synthetic spec parent links");
  return order;
}

TreeSpec TreeSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open synthetic spec: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

TreeSpec TreeSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad synthetic spec JSON: ") + e.what(), 1);
  }
  TreeSpec spec;
  try {
    spec.confidence = j.value("confidence", 1.0);
    std::unordered_map<std::string, int> index;
    for (const auto& nj : j.at("nodes")) {
      TreeSpecNode n;
      n.label = nj.at("label").get<std::string>();
      index.emplace(n.label, static_cast<int>(spec.nodes.size()));
      if (nj.contains("parent") && !nj["parent"].is_null()) {
        auto pname = nj["parent"].get<std::string>();
        auto it = index.find(pname);
        if (it == index.end())
          throw InvalidArgument("parent '" + pname + "' must be declared before '" +
                                n.label + "'");
        n.parent = it->second;
        auto cpt = nj.at("p_true_given_parent");
        n.p_true_given = {cpt.at(0).get<double>(), cpt.at(1).get<double>()};
      } else {
        n.p_true = nj.at("p_true").get<double>();
      }
      spec.nodes.push_back(std::move(n));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad synthetic spec JSON: ") + e.what(), 1);
  }
  spec.validate();
  return spec;
}

std::string TreeSpec::to_json_text() const {
  nlohmann::json j;
  j["confidence"] = confidence;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : nodes) {
    nlohmann::json nj;
    nj["label"] = n.label;
    if (n.parent >= 0) {
      nj["parent"] = nodes[n.parent].label;
      nj["p_true_given_parent"] = {n.p_true_given[0], n.p_true_given[1]};
    } else {
      nj["parent"] = nullptr;
      nj["p_true"] = n.p_true;
    }
    j["nodes"].push_back(std::move(nj));
  }
  return j.dump(2);
}

AnnotationCorpus generate_synthetic_corpus(const TreeSpec& spec, std::size_t n_images,
                                           std::uint64_t seed) {
  spec.validate();
  const auto order = spec.topological_order();
  const int d = static_cast<int>(spec.nodes.size());
  Rng rng(seed);
  AnnotationCorpus corpus;
  corpus.images.reserve(n_images);
  std::vector<char> value(d, 0);
  for (std::size_t img = 0; img < n_images; ++img) {
    ImageAnnotations image;
    image.image_id = "synth-" + std::to_string(img);
    for (int node : order) {
      const auto& n = spec.nodes[node];
      double p = n.parent < 0 ? n.p_true : n.p_true_given[value[n.parent]];
      value[node] = rng.next_bernoulli(p) ? 1 : 0;
      if (value[node])
        image.labels.push_back(Annotation{n.label, spec.confidence,
                                          Verified::Unverified});
    }
    corpus.images.push_back(std::move(image));
  }
  return corpus;
}

}  // namespace iota
