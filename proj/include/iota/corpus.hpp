#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iota/common.hpp"

namespace iota {

enum class Verified { Unverified, Correct, Incorrect };

struct Annotation {
  std::string label;
  double confidence = 1.0;
  Verified verified = Verified::Unverified;
};

struct ImageAnnotations {
  std::string image_id;
  std::vector<Annotation> labels;  // unique labels, max-confidence collapsed
};

struct AnnotationCorpus {
  std::vector<ImageAnnotations> images;

  std::size_t image_count() const { return images.size(); }
};

// Frequency-thresholded label set with dense ids and per-image marginals.
// Ids are assigned by descending image frequency, ties broken by name.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> labels, std::vector<std::int64_t> frequency,
             std::int64_t image_count);

  std::size_t size() const { return labels_.size(); }
  const std::string& name(int id) const { return labels_[id]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::int64_t frequency(int id) const { return frequency_[id]; }
  std::int64_t image_count() const { return image_count_; }

  // q(l) = fraction of images carrying the label.
  double marginal(int id) const {
    return static_cast<double>(frequency_[id]) / static_cast<double>(image_count_);
  }

  std::optional<int> id_of(std::string_view name) const;
  bool contains(std::string_view name) const { return id_of(name).has_value(); }

 private:
  std::vector<std::string> labels_;
  std::vector<std::int64_t> frequency_;
  std::int64_t image_count_ = 0;
  std::unordered_map<std::string, int> index_;
};

// CSV with header image_id,label,confidence[,verified]; verified in {1,0,empty}.
AnnotationCorpus load_annotations(const std::string& path);

void write_annotations_csv(const AnnotationCorpus& corpus, const std::string& path);

Vocabulary build_vocabulary(const AnnotationCorpus& corpus, std::int64_t min_count);

// Resamples ceil(fraction * image_count) whole images with replacement.
AnnotationCorpus bootstrap_sample(const AnnotationCorpus& corpus, double fraction,
                                  std::uint64_t seed);

}  // namespace iota
