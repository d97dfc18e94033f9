#include "iota/eval.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include "iota/csv.hpp"

namespace iota {

RatingsSet load_ratings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ratings file: " + path);
  RatingsSet set;
  std::unordered_set<std::string> seen;
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty ratings file: " + path, 1);
  ++line_no;
  auto header = csv::split_line(line);
  if (header.empty() || header[0] != "image_id")
    throw ParseError("bad header, expected image_id,rater1,rater2,rater3", line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = csv::split_line(line);
    if (fields.size() < 2 || fields.size() > 4)
      throw ParseError("expected image_id plus 1..3 rater columns", line_no);
    if (fields[0].empty()) throw ParseError("empty image_id", line_no);
    if (!seen.insert(fields[0]).second)
      throw ParseError("duplicate image row: " + fields[0], line_no);
    RatingsSet::Item item;
    item.image_id = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i)
      if (!fields[i].empty()) item.ratings.push_back(fields[i]);
    if (item.ratings.empty())
      throw ParseError("image " + fields[0] + " has no ratings", line_no);
    set.items.push_back(std::move(item));
  }
  return set;
}

const std::vector<std::string>* GroundTruth::targets_for(
    const std::string& image_id) const {
  auto it = targets.find(image_id);
  return it == targets.end() ? nullptr : &it->second;
}

GroundTruth majority_ground_truth(const RatingsSet& ratings) {
  GroundTruth gt;
  gt.mode = GtMode::Majority;
  for (const auto& item : ratings.items) {
    std::string majority;
    for (std::size_t i = 0; i < item.ratings.size() && majority.empty(); ++i)
      for (std::size_t j = i + 1; j < item.ratings.size(); ++j)
        if (item.ratings[i] == item.ratings[j]) {
          majority = item.ratings[i];
          break;
        }
    if (majority.empty())
      gt.excluded.emplace_back(item.image_id, "no-majority");
    else
      gt.targets[item.image_id] = {majority};
  }
  return gt;
}

GroundTruth multilabel_ground_truth(const RatingsSet& ratings) {
  GroundTruth gt;
  gt.mode = GtMode::Multilabel;
  for (const auto& item : ratings.items) {
    std::set<std::string> unique(item.ratings.begin(), item.ratings.end());
    gt.targets[item.image_id] =
        std::vector<std::string>(unique.begin(), unique.end());
  }
  return gt;
}

std::optional<ImageCandidates> filter_clean(const ImageCandidates& image,
                                            const GroundTruth& gt,
                                            const Vocabulary& vocab) {
  const auto* targets = gt.targets_for(image.image_id);
  if (targets) {
    bool any_in_vocab = false;
    for (const auto& t : *targets)
      if (vocab.contains(t)) any_in_vocab = true;
    if (!any_in_vocab) return std::nullopt;
  }
  ImageCandidates out;
  out.image_id = image.image_id;
  for (const auto& c : image.candidates)
    if (c.verified == Verified::Correct) out.candidates.push_back(c);
  if (out.candidates.empty()) return std::nullopt;
  return out;
}

AgreementStats rater_agreement(const RatingsSet& ratings) {
  AgreementStats s;
  s.n_images = ratings.items.size();
  if (s.n_images == 0) return s;
  std::size_t two = 0, three = 0;
  for (const auto& item : ratings.items) {
    bool pair_match = false;
    for (std::size_t i = 0; i < item.ratings.size(); ++i)
      for (std::size_t j = i + 1; j < item.ratings.size(); ++j)
        if (item.ratings[i] == item.ratings[j]) pair_match = true;
    if (pair_match) ++two;
    if (item.ratings.size() == 3 && item.ratings[0] == item.ratings[1] &&
        item.ratings[1] == item.ratings[2])
      ++three;
  }
  s.at_least_two = static_cast<double>(two) / static_cast<double>(s.n_images);
  s.all_three = static_cast<double>(three) / static_cast<double>(s.n_images);
  return s;
}

EvalReport precision_recall_at_k(
    const std::map<Method, std::vector<RankedLabels>>& rankings,
    const GroundTruth& gt, std::size_t k_max) {
  EvalReport report;
  report.k_max = k_max;
  report.mode = gt.mode;
  for (const auto& [method, ranked] : rankings) {
    EvalReport::MethodCurve curve;
    curve.method = method;
    curve.precision.assign(k_max, 0.0);
    curve.recall.assign(k_max, 0.0);
    std::size_t n = 0;
    for (const auto& r : ranked) {
      const auto* targets = gt.targets_for(r.image_id);
      if (!targets || targets->empty()) continue;  // ranking without GT
      ++n;
      std::size_t hits = 0;
      for (std::size_t k = 1; k <= k_max; ++k) {
        if (k <= r.entries.size()) {
          const std::string& label = r.entries[k - 1].label;
          if (std::find(targets->begin(), targets->end(), label) != targets->end())
            ++hits;
        }
        curve.precision[k - 1] += static_cast<double>(hits) / static_cast<double>(k);
        curve.recall[k - 1] +=
            static_cast<double>(hits) / static_cast<double>(targets->size());
      }
    }
    if (n > 0) {
      for (std::size_t k = 0; k < k_max; ++k) {
        curve.precision[k] /= static_cast<double>(n);
        curve.recall[k] /= static_cast<double>(n);
      }
    }
    report.n_images = n;
    report.curves.push_back(std::move(curve));
  }
  return report;
}

EvalReport evaluate(const TreeMixture& model, const AnnotationCorpus& images,
                    const RatingsSet& ratings, const EvalOptions& options) {
  GroundTruth gt = options.mode == GtMode::Majority ? majority_ground_truth(ratings)
                                                    : multilabel_ground_truth(ratings);
  const std::vector<Method>& methods =
      options.methods.empty() ? all_methods() : options.methods;

  // Per-image candidate sets surviving the setup filter.
  std::vector<ImageCandidates> evaluated;
  std::unordered_set<std::string> evaluated_ids;
  for (const auto& img : images.images) {
    if (!gt.targets_for(img.image_id)) continue;
    ImageCandidates cand = candidates_from_image(img);
    if (!options.noisy) {
      auto filtered = filter_clean(cand, gt, *model.full_vocab);
      if (!filtered) continue;
      cand = std::move(*filtered);
    }
    if (evaluated_ids.insert(cand.image_id).second)
      evaluated.push_back(std::move(cand));
  }

  std::map<Method, std::vector<RankedLabels>> rankings;
  for (Method m : methods) {
    auto& ranked = rankings[m];
    ranked.reserve(evaluated.size());
    for (const auto& cand : evaluated) {
      ScoreTable scores = score_labels(model, cand, m, options.seed);
      ranked.push_back(
          rank_labels(cand, scores, default_tie_policy(m), options.seed));
    }
  }

  EvalReport report = precision_recall_at_k(rankings, gt, options.k_max);
  report.noisy = options.noisy;

  RatingsSet subset;
  for (const auto& item : ratings.items)
    if (evaluated_ids.count(item.image_id)) subset.items.push_back(item);
  report.agreement = rater_agreement(subset);
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void write_report_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + path);
  out << "method,setup,k,precision,recall,n_images\n";
  const char* setup = report.noisy ? "noisy" : "clean";
  for (const auto& curve : report.curves) {
    for (std::size_t k = 1; k <= report.k_max; ++k) {
      out << csv::join({method_name(curve.method), setup, std::to_string(k),
                        fmt(curve.precision[k - 1]), fmt(curve.recall[k - 1]),
                        std::to_string(report.n_images)})
          << '\n';
    }
  }
}

std::string report_summary(const EvalReport& report) {
  std::string s;
  s += "setup: ";
  s += report.noisy ? "noisy" : "clean";
  s += ", mode: ";
  s += report.mode == GtMode::Majority ? "majority" : "multilabel";
  s += ", images: " + std::to_string(report.n_images) + "\n";
  s += "rater agreement: >=2 " + fmt(report.agreement.at_least_two) + ", all-3 " +
       fmt(report.agreement.all_three) + "\n";
  s += "method            P@1      R@1      P@5      R@5\n";
  for (const auto& curve : report.curves) {
    char line[128];
    std::size_t i5 = std::min<std::size_t>(5, report.k_max) - 1;
    std::snprintf(line, sizeof(line), "%-16s %.4f   %.4f   %.4f   %.4f\n",
                  method_name(curve.method), curve.precision[0], curve.recall[0],
                  curve.precision[i5], curve.recall[i5]);
    s += line;
  }
  return s;
}

}  // namespace iota
