#include <fstream>

#include "iota/csv.hpp"
#include "iota/entropy.hpp"
#include "iota/tree.hpp"

namespace iota {

void TreeMixture::refresh_scores() {
  tree_entropy.clear();
  label_stats.clear();
  for (const auto& tree : trees) {
    tree_entropy.push_back(joint_entropy(tree));
    auto scores = per_label_scores(tree);
    for (int i = 0; i < tree.size(); ++i) {
      auto& s = label_stats[tree.vocab().name(i)];
      s.delta_h_sum += scores[i].delta_h;
      s.h_cond_sum += scores[i].h_conditional;
      s.kl_sum += scores[i].kl;
      ++s.n_trees;
    }
  }
}

std::optional<double> TreeMixture::average_delta_h(const std::string& label) const {
  auto it = label_stats.find(label);
  if (it == label_stats.end() || it->second.n_trees == 0) return std::nullopt;
  return it->second.delta_h_sum / it->second.n_trees;
}

std::optional<double> TreeMixture::average_kl(const std::string& label) const {
  auto it = label_stats.find(label);
  if (it == label_stats.end() || it->second.n_trees == 0) return std::nullopt;
  return it->second.kl_sum / it->second.n_trees;
}

std::optional<double> TreeMixture::average_conditional_entropy(
    const std::string& label) const {
  auto it = label_stats.find(label);
  if (it == label_stats.end() || it->second.n_trees == 0) return std::nullopt;
  return it->second.h_cond_sum / it->second.n_trees;
}

void TreeMixture::export_scores_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write score dump: " + path);
  out << "label,delta_h_bits,h_conditional_bits,kl_bits,image_delta_h_bits,"
         "singleton_bits,marginal\n";
  char buf[32];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < full_vocab->size(); ++i) {
    const std::string& name = full_vocab->name(static_cast<int>(i));
    double q = full_vocab->marginal(static_cast<int>(i));
    auto dh = average_delta_h(name);
    auto hc = average_conditional_entropy(name);
    auto kl = average_kl(name);
    out << csv::join({name, dh ? fmt(*dh) : "", hc ? fmt(*hc) : "",
                      kl ? fmt(*kl) : "", fmt(-std::log2(q)),
                      fmt(binary_entropy(q)), fmt(q)})
        << '\n';
  }
}

TreeMixture build_mixture(const AnnotationCorpus& corpus, const MixtureOptions& options) {
  if (options.tree_count < 1) throw InvalidArgument("tree_count must be >= 1");
  TreeMixture mix;
  mix.options = options;
  mix.full_vocab = std::make_shared<Vocabulary>(
      build_vocabulary(corpus, options.min_count));
  for (int t = 0; t < options.tree_count; ++t) {
    AnnotationCorpus sample =
        options.bootstrap
            ? bootstrap_sample(corpus, options.bootstrap_fraction,
                               mix_seed(options.seed, static_cast<std::uint64_t>(t)))
            : corpus;
    auto vocab = options.shared_vocabulary
                     ? mix.full_vocab
                     : std::make_shared<Vocabulary>(
                           build_vocabulary(sample, options.min_count));
    PairwiseStats stats(sample, vocab, options.alpha);
    mix.trees.push_back(build_tree(stats));
  }
  mix.refresh_scores();
  return mix;
}

}  // namespace iota
