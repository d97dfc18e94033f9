#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iota/scoring.hpp"

namespace iota {

// Up to 3 rater labels per image, stored verbatim; strings outside the
// vocabulary matter for the noisy setup.
struct RatingsSet {
  struct Item {
    std::string image_id;
    std::vector<std::string> ratings;  // 1..3
  };
  std::vector<Item> items;
};

// CSV: image_id,rater1,rater2,rater3 (empty cells allowed).
RatingsSet load_ratings(const std::string& path);

enum class GtMode { Majority, Multilabel };

struct GroundTruth {
  GtMode mode = GtMode::Majority;
  std::map<std::string, std::vector<std::string>> targets;  // image -> labels
  std::vector<std::pair<std::string, std::string>> excluded;  // (image, reason)

  const std::vector<std::string>* targets_for(const std::string& image_id) const;
};

// Target = any label named by >= 2 raters; images whose ratings are pairwise
// distinct are excluded with reason "no-majority".
GroundTruth majority_ground_truth(const RatingsSet& ratings);

// Union of all rater labels, unweighted.
GroundTruth multilabel_ground_truth(const RatingsSet& ratings);

// Clean setup: drops candidates not verified-correct and skips images whose
// ground truth lies entirely outside the vocabulary; returns nullopt for a
// skipped image. The noisy setup passes images through unchanged.
std::optional<ImageCandidates> filter_clean(const ImageCandidates& image,
                                            const GroundTruth& gt,
                                            const Vocabulary& vocab);

struct AgreementStats {
  double at_least_two = 0.0;
  double all_three = 0.0;
  std::size_t n_images = 0;
};

AgreementStats rater_agreement(const RatingsSet& ratings);

struct EvalReport {
  struct MethodCurve {
    Method method = Method::CwDh;
    std::vector<double> precision;  // index k-1
    std::vector<double> recall;
  };
  std::vector<MethodCurve> curves;
  std::size_t n_images = 0;
  std::size_t k_max = 10;
  AgreementStats agreement;
  bool noisy = false;
  GtMode mode = GtMode::Majority;
};

// Macro-averaged P@k / R@k per method over images that have both a ranking
// and a ground-truth target.
EvalReport precision_recall_at_k(
    const std::map<Method, std::vector<RankedLabels>>& rankings,
    const GroundTruth& gt, std::size_t k_max);

struct EvalOptions {
  bool noisy = false;
  GtMode mode = GtMode::Majority;
  std::size_t k_max = 10;
  std::uint64_t seed = 0;
  std::vector<Method> methods;  // empty: all methods
};

// Full evaluation pipeline: ground truth, clean/noisy filtering, scoring,
// ranking, curves and rater agreement on the evaluated subset.
EvalReport evaluate(const TreeMixture& model, const AnnotationCorpus& images,
                    const RatingsSet& ratings, const EvalOptions& options);

// CSV: method,setup,k,precision,recall,n_images.
void write_report_csv(const EvalReport& report, const std::string& path);

std::string report_summary(const EvalReport& report);

}  // namespace iota
