#include "iota/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "iota/csv.hpp"
#include "iota/entropy.hpp"

namespace iota {

namespace {

constexpr std::pair<Method, const char*> kMethodNames[] = {
    {Method::CwDh, "cw-dh"},
    {Method::Dh, "dh"},
    {Method::CwDkl, "cw-dkl"},
    {Method::Dkl, "dkl"},
    {Method::CwImageDh, "cw-image-dh"},
    {Method::ImageDh, "image-dh"},
    {Method::CwSingleton, "cw-singleton"},
    {Method::Singleton, "singleton"},
    {Method::CwPx, "cw-px"},
    {Method::Px, "px"},
    {Method::Confidence, "confidence"},
    {Method::Random, "random"},
};

double random_unit_score(std::uint64_t seed, const std::string& image_id,
                         const std::string& label) {
  std::uint64_t h = fnv1a(label, fnv1a(image_id));
  return static_cast<double>(mix_seed(seed, h) >> 11) * 0x1.0p-53;
}

}  // namespace

const char* method_name(Method m) {
  for (auto [method, name] : kMethodNames)
    if (method == m) return name;
  return "?";
}

Method method_from_name(std::string_view name) {
  for (auto [method, n] : kMethodNames)
    if (name == n) return method;
  throw InvalidArgument("unknown scoring method: " + std::string(name));
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> m;
    for (auto [method, name] : kMethodNames) m.push_back(method);
    return m;
  }();
  return methods;
}

ImageCandidates candidates_from_image(const ImageAnnotations& image) {
  ImageCandidates out;
  out.image_id = image.image_id;
  out.candidates.reserve(image.labels.size());
  for (const auto& a : image.labels)
    out.candidates.push_back(Candidate{a.label, a.confidence, a.verified});
  return out;
}

TiePolicy default_tie_policy(Method m) {
  return m == Method::Confidence ? TiePolicy::Random : TiePolicy::Deterministic;
}

ScoreTable score_labels(const TreeMixture& model, const ImageCandidates& image,
                        Method method, std::uint64_t seed) {
  ScoreTable table;
  table.image_id = image.image_id;
  table.method = method;
  table.scores.reserve(image.candidates.size());

  for (const auto& c : image.candidates) {
    std::optional<double> base;
    switch (method) {
      case Method::CwDh:
      case Method::Dh:
        base = model.average_delta_h(c.label);
        break;
      case Method::CwDkl:
      case Method::Dkl:
        base = model.average_kl(c.label);
        break;
      case Method::CwImageDh:
      case Method::ImageDh:
        if (auto id = model.full_vocab->id_of(c.label))
          base = -std::log2(model.full_vocab->marginal(*id));
        break;
      case Method::CwSingleton:
      case Method::Singleton:
        if (auto id = model.full_vocab->id_of(c.label))
          base = binary_entropy(model.full_vocab->marginal(*id));
        break;
      case Method::CwPx:
      case Method::Px:
        if (auto id = model.full_vocab->id_of(c.label))
          base = model.full_vocab->marginal(*id);
        break;
      case Method::Confidence:
        base = c.confidence;
        break;
      case Method::Random:
        base = random_unit_score(seed, image.image_id, c.label);
        break;
    }
    switch (method) {
      case Method::CwDh:
      case Method::CwDkl:
      case Method::CwImageDh:
      case Method::CwSingleton:
      case Method::CwPx:
        if (base) base = *base * c.confidence;
        break;
      default:
        break;
    }
    table.scores.push_back(base);
  }
  return table;
}

RankedLabels rank_labels(const ImageCandidates& image, const ScoreTable& scores,
                         TiePolicy policy, std::uint64_t seed) {
  if (scores.scores.size() != image.candidates.size())
    throw InvalidArgument("rank_labels: score table does not match candidates");

  struct Key {
    int idx;
    bool defined;
    double score;
    double tie_conf;
    std::uint64_t tie_rand;
    std::int64_t label_id;
  };
  std::vector<Key> keys;
  keys.reserve(image.candidates.size());
  for (std::size_t i = 0; i < image.candidates.size(); ++i) {
    const auto& c = image.candidates[i];
    Key k;
    k.idx = static_cast<int>(i);
    k.defined = scores.scores[i].has_value();
    k.score = k.defined ? *scores.scores[i] : 0.0;
    k.tie_conf = c.confidence;
    k.tie_rand = mix_seed(seed, fnv1a(c.label, fnv1a(image.image_id)));
    // Undefined scores rank last in label-id order; labels outside any
    // vocabulary fall back to candidate order.
    k.label_id = static_cast<std::int64_t>(i);
    keys.push_back(k);
  }

  auto less = [&](const Key& x, const Key& y) {
    if (x.defined != y.defined) return x.defined;
    if (!x.defined) return x.label_id < y.label_id;
    if (x.score != y.score) return x.score > y.score;
    if (policy == TiePolicy::Random) return x.tie_rand < y.tie_rand;
    if (x.tie_conf != y.tie_conf) return x.tie_conf > y.tie_conf;
    return x.label_id < y.label_id;
  };
  std::stable_sort(keys.begin(), keys.end(), less);

  RankedLabels out;
  out.image_id = image.image_id;
  out.method = scores.method;
  out.entries.reserve(keys.size());
  for (const auto& k : keys) {
    const auto& c = image.candidates[k.idx];
    out.entries.push_back(RankedEntry{c.label, scores.scores[k.idx], c.confidence});
  }
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i - 1].defined && keys[i].defined && keys[i - 1].score == keys[i].score) {
      out.tie_trace.push_back(
          out.entries[i - 1].label + "~" + out.entries[i].label +
          (policy == TiePolicy::Random ? ":random" : ":confidence-then-id"));
    }
  }
  return out;
}

std::vector<std::string> select_k_labels(const TreeMixture& model,
                                         const ImageCandidates& image, std::size_t k,
                                         bool confidence_weighted) {
  if (k < 1) throw InvalidArgument("select_k_labels: k must be >= 1");

  std::vector<int> remaining(image.candidates.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);
  std::vector<std::string> selected;

  while (selected.size() < k && !remaining.empty()) {
    // Average delta-H given the selected set over trees containing each
    // candidate; the first round reduces to the plain cw-delta-H score.
    std::vector<double> sum(image.candidates.size(), 0.0);
    std::vector<int> n_trees(image.candidates.size(), 0);
    for (const auto& tree : model.trees) {
      std::vector<int> given;
      for (const auto& name : selected)
        if (auto id = tree.vocab().id_of(name)) given.push_back(*id);
      ConditionedTree cond = condition(tree, given);
      const double h = joint_entropy(cond);
      for (int idx : remaining) {
        auto id = tree.vocab().id_of(image.candidates[idx].label);
        if (!id) continue;
        double dh = h - joint_entropy(extend_condition(cond, *id));
        sum[idx] += dh;
        ++n_trees[idx];
      }
    }

    int best = -1;
    bool best_defined = false;
    double best_score = 0.0;
    for (int idx : remaining) {
      const auto& c = image.candidates[idx];
      bool defined = n_trees[idx] > 0;
      double score = defined ? sum[idx] / n_trees[idx] : 0.0;
      if (defined && confidence_weighted) score *= c.confidence;
      bool better;
      if (defined != best_defined) {
        better = defined;
      } else if (!defined) {
        better = best < 0;  // keep candidate order among undefined
      } else if (score != best_score) {
        better = score > best_score;
      } else {
        better = c.confidence > image.candidates[best].confidence;
      }
      if (best < 0 || better) {
        best = idx;
        best_defined = defined;
        best_score = score;
      }
    }
    selected.push_back(image.candidates[best].label);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
  }
  return selected;
}

void write_rankings_csv(const TreeMixture& model, const AnnotationCorpus& images,
                        const std::vector<Method>& methods, std::size_t k_max,
                        std::uint64_t seed, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write ranking output: " + path);
  out << "image_id,method,rank,label,score,confidence\n";
  char buf[32];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  for (const auto& img : images.images) {
    ImageCandidates cand = candidates_from_image(img);
    for (Method m : methods) {
      ScoreTable scores = score_labels(model, cand, m, seed);
      RankedLabels ranked = rank_labels(cand, scores, default_tie_policy(m), seed);
      const std::size_t n = std::min(k_max, ranked.entries.size());
      for (std::size_t r = 0; r < n; ++r) {
        const auto& e = ranked.entries[r];
        out << csv::join({img.image_id, method_name(m), std::to_string(r + 1),
                          e.label, e.score ? fmt(*e.score) : "",
                          fmt(e.confidence)})
            << '\n';
      }
    }
  }
}

}  // namespace iota
