#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "iota/pairstats.hpp"

namespace iota {

// Undirected tree edge carrying the pair's smoothed 2x2 joint. prob and
// counts are indexed [value_a][value_b].
struct EdgeJoint {
  int a = 0;
  int b = 0;
  std::array<std::array<double, 2>, 2> prob{};
  std::array<std::array<double, 2>, 2> counts{};
  double mi = 0.0;
};

// A rooted, fully parameterized tree distribution over binary labels:
// parent pointers, per-node marginals and per-edge CPTs p(child|parent).
// Marginals are always consistent with root marginal + CPT propagation.
struct TreeDist {
  int root = 0;
  std::vector<int> parent;  // -1 for root
  std::vector<int> order;   // root first, parents before children
  std::vector<std::array<double, 2>> marginal;
  std::vector<std::array<std::array<double, 2>, 2>> cpt;  // [node][pv][cv]

  int size() const { return static_cast<int>(parent.size()); }

  // Chain-rule entropy in bits.
  double entropy_bits() const;
};

// Reorients parent pointers so new_root is the root; CPTs are rebuilt from
// the edge joints implied by the current parametrization. The represented
// joint distribution is unchanged.
TreeDist reroot(const TreeDist& t, int new_root);

// Clamps the root marginal to [0,1] (root = true) and repropagates all
// descendant marginals. Throws ZeroProbabilityEvidence if p(root=true) == 0.
TreeDist condition_on_root_true(const TreeDist& t);

class ChowLiuTree {
 public:
  ChowLiuTree() = default;

  // Spanning tree from explicit edges; single_marginal is used when there
  // are no edges (d == 1).
  ChowLiuTree(std::shared_ptr<const Vocabulary> vocab, std::vector<EdgeJoint> edges,
              int root, std::array<double, 2> single_marginal = {0.5, 0.5});

  // Direct construction from a known rooted parametrization; edge joints
  // are derived by downward propagation, so rerooting stays exact.
  static ChowLiuTree from_parameters(
      std::shared_ptr<const Vocabulary> vocab, const std::vector<int>& parent,
      int root, std::array<double, 2> root_marginal,
      const std::vector<std::array<std::array<double, 2>, 2>>& cpt);

  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }
  const std::vector<EdgeJoint>& edges() const { return edges_; }
  int size() const { return static_cast<int>(vocab_->size()); }
  int root() const { return dist_.root; }
  const TreeDist& dist() const { return dist_; }
  std::array<double, 2> root_marginal() const { return dist_.marginal[dist_.root]; }

  double total_mi() const;

  // Rooted parametrization derived from the stored 2x2 joints.
  TreeDist rooted_at(int new_root) const;

  // CSV: parent,child,mi_bits in the current orientation.
  void export_edges_csv(const std::string& path) const;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<EdgeJoint> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;  // (neighbor, edge index)
  TreeDist dist_;

  void build_adjacency();
};

// Maximum-MI spanning tree via Kruskal; deterministic tie-break on
// (min id, max id). Root defaults to label id 0.
ChowLiuTree build_tree(const PairwiseStats& stats);

ChowLiuTree reroot(const ChowLiuTree& tree, int new_root);

struct MixtureOptions {
  int tree_count = 10;
  std::int64_t min_count = 100;
  double alpha = 0.5;
  double bootstrap_fraction = 1.0;
  std::uint64_t seed = 0;
  bool shared_vocabulary = false;  // one global vocabulary vs per-sample
  bool bootstrap = true;           // false: every tree sees the full corpus
};

// Tree-averaged per-label quantities; a label accumulates only over trees
// whose vocabulary contains it.
struct LabelScoreStats {
  double delta_h_sum = 0.0;
  double h_cond_sum = 0.0;
  double kl_sum = 0.0;
  int n_trees = 0;
};

class TreeMixture {
 public:
  std::vector<ChowLiuTree> trees;
  std::shared_ptr<const Vocabulary> full_vocab;
  MixtureOptions options;

  std::vector<double> tree_entropy;  // bits, per tree
  std::unordered_map<std::string, LabelScoreStats> label_stats;

  // Recomputes tree entropies and per-label delta-H / KL caches.
  void refresh_scores();

  std::optional<double> average_delta_h(const std::string& label) const;
  std::optional<double> average_kl(const std::string& label) const;
  std::optional<double> average_conditional_entropy(const std::string& label) const;

  // CSV: label,delta_h_bits,h_conditional_bits,kl_bits,image_delta_h_bits,
  // singleton_bits,marginal over the full vocabulary.
  void export_scores_csv(const std::string& path) const;
};

TreeMixture build_mixture(const AnnotationCorpus& corpus, const MixtureOptions& options);

}  // namespace iota
