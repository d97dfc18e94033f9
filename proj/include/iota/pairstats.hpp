#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iota/corpus.hpp"

namespace iota {

// Smoothed 2x2 joint over one unordered label pair; index order is
// [value_i][value_j] with 0=false, 1=true.
struct PairJoint {
  std::array<std::array<double, 2>, 2> counts;
  std::array<std::array<double, 2>, 2> prob;
  std::array<double, 2> marginal_i;
  std::array<double, 2> marginal_j;
};

// MI = sum p(a,b) log2(p(a,b) / (p(a) p(b))), 0*log0 == 0, clamped to >= 0.
double mutual_information(const PairJoint& joint);

// Per-pair joint tables and MI for every unordered vocabulary pair.
// Co-occurrence counting is a sparse pass: only true/true counts are stored,
// the other cells derive from label frequencies and the image count.
class PairwiseStats {
 public:
  PairwiseStats(const AnnotationCorpus& corpus, std::shared_ptr<const Vocabulary> vocab,
                double alpha);

  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }
  double alpha() const { return alpha_; }
  std::int64_t image_count() const { return n_images_; }

  double mi(int i, int j) const { return mi_[pair_index(i, j)]; }
  std::int64_t cooccurrence(int i, int j) const { return tt_[pair_index(i, j)]; }
  PairJoint joint(int i, int j) const;  // requires i != j

  // Smoothed single-label marginal (frequency + 2 alpha) / (N + 4 alpha),
  // i.e. the row sum shared by every pair table the label appears in.
  std::array<double, 2> smoothed_marginal(int id) const;

  void dump_csv(const std::string& path) const;

 private:
  static std::size_t pair_index_unchecked(int lo, int hi) {
    return static_cast<std::size_t>(hi) * (hi - 1) / 2 + lo;
  }
  std::size_t pair_index(int i, int j) const;

  std::shared_ptr<const Vocabulary> vocab_;
  double alpha_;
  std::int64_t n_images_;
  std::vector<std::int64_t> tt_;  // true/true counts, triangular i<j
  std::vector<double> mi_;
};

inline PairwiseStats compute_pair_stats(const AnnotationCorpus& corpus,
                                        std::shared_ptr<const Vocabulary> vocab,
                                        double alpha) {
  return PairwiseStats(corpus, std::move(vocab), alpha);
}

}  // namespace iota
