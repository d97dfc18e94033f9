#include "iota/pairstats.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "iota/csv.hpp"

namespace iota {

double mutual_information(const PairJoint& joint) {
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double p = joint.prob[a][b];
      if (p <= 0.0) continue;  // 0*log0 == 0
      mi += p * std::log2(p / (joint.marginal_i[a] * joint.marginal_j[b]));
    }
  }
  return std::max(mi, 0.0);
}

PairwiseStats::PairwiseStats(const AnnotationCorpus& corpus,
                             std::shared_ptr<const Vocabulary> vocab, double alpha)
    : vocab_(std::move(vocab)), alpha_(alpha),
      n_images_(static_cast<std::int64_t>(corpus.image_count())) {
  if (alpha_ < 0.0) throw InvalidArgument("smoothing alpha must be >= 0");
  if (vocab_->size() == 0) throw InvalidArgument("empty vocabulary");

  const int d = static_cast<int>(vocab_->size());
  tt_.assign(static_cast<std::size_t>(d) * (d - 1) / 2, 0);

  std::vector<int> present;
  for (const auto& img : corpus.images) {
    present.clear();
    for (const auto& a : img.labels)
      if (auto id = vocab_->id_of(a.label)) present.push_back(*id);
    std::sort(present.begin(), present.end());
    for (std::size_t x = 0; x < present.size(); ++x)
      for (std::size_t y = x + 1; y < present.size(); ++y)
        ++tt_[pair_index_unchecked(present[x], present[y])];
  }

  mi_.resize(tt_.size());
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i)
      mi_[pair_index_unchecked(i, j)] = mutual_information(joint(i, j));
}

std::size_t PairwiseStats::pair_index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= static_cast<int>(vocab_->size()) ||
      j >= static_cast<int>(vocab_->size()))
    throw InvalidArgument("bad label pair (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  auto [lo, hi] = std::minmax(i, j);
  return pair_index_unchecked(lo, hi);
}

PairJoint PairwiseStats::joint(int i, int j) const {
  const bool swapped = i > j;
  auto [lo, hi] = std::minmax(i, j);
  const double n_tt = static_cast<double>(tt_[pair_index(lo, hi)]);
  const double f_lo = static_cast<double>(vocab_->frequency(lo));
  const double f_hi = static_cast<double>(vocab_->frequency(hi));
  const double n = static_cast<double>(n_images_);

  PairJoint pj;
  // counts indexed [lo value][hi value]
  pj.counts[1][1] = n_tt;
  pj.counts[1][0] = f_lo - n_tt;
  pj.counts[0][1] = f_hi - n_tt;
  pj.counts[0][0] = n - f_lo - f_hi + n_tt;
  const double denom = n + 4.0 * alpha_;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      pj.prob[a][b] = (pj.counts[a][b] + alpha_) / denom;
  if (swapped) {
    std::swap(pj.counts[0][1], pj.counts[1][0]);
    std::swap(pj.prob[0][1], pj.prob[1][0]);
  }
  for (int a = 0; a < 2; ++a) {
    pj.marginal_i[a] = pj.prob[a][0] + pj.prob[a][1];
    pj.marginal_j[a] = pj.prob[0][a] + pj.prob[1][a];
  }
  return pj;
}

std::array<double, 2> PairwiseStats::smoothed_marginal(int id) const {
  const double f = static_cast<double>(vocab_->frequency(id));
  const double n = static_cast<double>(n_images_);
  const double denom = n + 4.0 * alpha_;
  return {(n - f + 2.0 * alpha_) / denom, (f + 2.0 * alpha_) / denom};
}

void PairwiseStats::dump_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write stats dump: " + path);
  out << "label_i,label_j,n_tt,n_tf,n_ft,n_ff,mi_bits\n";
  const int d = static_cast<int>(vocab_->size());
  char buf[32];
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      PairJoint pj = joint(i, j);
      std::snprintf(buf, sizeof(buf), "%.12g", mi(i, j));
      out << csv::join({vocab_->name(i), vocab_->name(j),
                        std::to_string(static_cast<std::int64_t>(pj.counts[1][1])),
                        std::to_string(static_cast<std::int64_t>(pj.counts[1][0])),
                        std::to_string(static_cast<std::int64_t>(pj.counts[0][1])),
                        std::to_string(static_cast<std::int64_t>(pj.counts[0][0])),
                        buf})
          << '\n';
    }
  }
}

}  // namespace iota
