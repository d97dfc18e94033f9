#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iota/tree.hpp"

namespace iota {

// Stable CLI method names: cw-dh, dh, cw-dkl, dkl, cw-image-dh, image-dh,
// cw-singleton, singleton, cw-px, px, confidence, random.
enum class Method {
  CwDh,
  Dh,
  CwDkl,
  Dkl,
  CwImageDh,
  ImageDh,
  CwSingleton,
  Singleton,
  CwPx,
  Px,
  Confidence,
  Random,
};

const char* method_name(Method m);
Method method_from_name(std::string_view name);  // throws InvalidArgument
const std::vector<Method>& all_methods();

struct Candidate {
  std::string label;
  double confidence = 1.0;
  Verified verified = Verified::Unverified;
};

struct ImageCandidates {
  std::string image_id;
  std::vector<Candidate> candidates;
};

ImageCandidates candidates_from_image(const ImageAnnotations& image);

// One score slot per candidate; labels absent from every tree (or, for the
// marginal-based methods, from the vocabulary) score undefined.
struct ScoreTable {
  std::string image_id;
  Method method = Method::CwDh;
  std::vector<std::optional<double>> scores;
};

ScoreTable score_labels(const TreeMixture& model, const ImageCandidates& image,
                        Method method, std::uint64_t seed = 0);

enum class TiePolicy { Deterministic, Random };

// Random tie-breaking for the confidence baseline, deterministic
// (confidence desc, then candidate order) everywhere else.
TiePolicy default_tie_policy(Method m);

struct RankedEntry {
  std::string label;
  std::optional<double> score;
  double confidence = 1.0;
};

struct RankedLabels {
  std::string image_id;
  Method method = Method::CwDh;
  std::vector<RankedEntry> entries;   // non-increasing score, undefined last
  std::vector<std::string> tie_trace;  // "a~b:policy" per broken tie
};

RankedLabels rank_labels(const ImageCandidates& image, const ScoreTable& scores,
                         TiePolicy policy, std::uint64_t seed);

// Greedy transmission set: first label maximizes cw-delta-H, each later pick
// maximizes (confidence-weighted) entropy reduction given the already
// selected labels.
std::vector<std::string> select_k_labels(const TreeMixture& model,
                                         const ImageCandidates& image, std::size_t k,
                                         bool confidence_weighted = true);

// CSV: image_id,method,rank,label,score,confidence; at most k_max rows per
// (image, method).
void write_rankings_csv(const TreeMixture& model, const AnnotationCorpus& images,
                        const std::vector<Method>& methods, std::size_t k_max,
                        std::uint64_t seed, const std::string& path);

}  // namespace iota
