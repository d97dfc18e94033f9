#pragma once

#include <span>
#include <vector>

#include "iota/tree.hpp"

namespace iota {

// Tree distribution conditioned on a set of labels asserted true. The
// distribution still factorizes over the same tree, rooted at the last
// evidence label.
struct ConditionedTree {
  TreeDist dist;
  std::vector<int> evidence;
};

double joint_entropy(const ChowLiuTree& tree);
double joint_entropy(const ConditionedTree& cond);

// Sequential conditioning: reroot at the evidence label, clamp its marginal
// to [0,1], repropagate; repeat for each evidence label.
ConditionedTree condition(const ChowLiuTree& tree, std::span<const int> evidence);

// One more evidence label on an already conditioned distribution.
ConditionedTree extend_condition(const ConditionedTree& cond, int label);

// delta-H(i) = H - H[.|l_i = true]; may be negative.
double entropy_reduction(const ChowLiuTree& tree, int label);

double sequential_entropy_reduction(const ChowLiuTree& tree,
                                    std::span<const int> given, int candidate);

// D_KL(conditioned || base) in closed form over the shared rooted
// factorization. Returns +infinity when the base assigns probability 0
// where the conditioned distribution does not (alpha = 0 models only).
double kl_divergence(const ConditionedTree& cond, const ChowLiuTree& base);

struct LabelInfo {
  double delta_h;
  double h_conditional;
  double kl;
};

// delta-H and KL for every label of one tree; O(d^2).
std::vector<LabelInfo> per_label_scores(const ChowLiuTree& tree);

}  // namespace iota
