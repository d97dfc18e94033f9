#include "iota/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iota {

double joint_entropy(const ChowLiuTree& tree) { return tree.dist().entropy_bits(); }

double joint_entropy(const ConditionedTree& cond) { return cond.dist.entropy_bits(); }

ConditionedTree condition(const ChowLiuTree& tree, std::span<const int> evidence) {
  ConditionedTree out;
  out.dist = tree.dist();
  for (int e : evidence) {
    if (e < 0 || e >= tree.size())
      throw InvalidArgument("condition: unknown label id " + std::to_string(e));
    // Repeated evidence is idempotent.
    if (std::find(out.evidence.begin(), out.evidence.end(), e) != out.evidence.end())
      continue;
    // First evidence reorients from the stored pairwise joints; later steps
    // reorient the already-conditioned parametrization.
    TreeDist rooted = out.evidence.empty() ? tree.rooted_at(e) : reroot(out.dist, e);
    out.dist = condition_on_root_true(rooted);
    out.evidence.push_back(e);
  }
  return out;
}

ConditionedTree extend_condition(const ConditionedTree& cond, int label) {
  if (label < 0 || label >= cond.dist.size())
    throw InvalidArgument("condition: unknown label id " + std::to_string(label));
  if (std::find(cond.evidence.begin(), cond.evidence.end(), label) !=
      cond.evidence.end())
    return cond;
  ConditionedTree out;
  out.dist = condition_on_root_true(reroot(cond.dist, label));
  out.evidence = cond.evidence;
  out.evidence.push_back(label);
  return out;
}

double entropy_reduction(const ChowLiuTree& tree, int label) {
  const int ev[1] = {label};
  return joint_entropy(tree) - joint_entropy(condition(tree, ev));
}

double sequential_entropy_reduction(const ChowLiuTree& tree,
                                    std::span<const int> given, int candidate) {
  ConditionedTree base = condition(tree, given);
  ConditionedTree more = extend_condition(base, candidate);
  return joint_entropy(base) - joint_entropy(more);
}

namespace {

// q-weighted log ratio with the 0*log0 convention; q>0 against p==0 is an
// infinite divergence.
double kl_term(double q, double p) {
  if (q <= 0.0) return 0.0;
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return q * std::log2(q / p);
}

}  // namespace

double kl_divergence(const ConditionedTree& cond, const ChowLiuTree& base) {
  if (cond.dist.size() != base.size())
    throw InvalidArgument("kl_divergence: mismatched tree sizes");
  const TreeDist& q = cond.dist;
  const TreeDist p = base.rooted_at(q.root);

  double d = 0.0;
  for (int v = 0; v < 2; ++v) d += kl_term(q.marginal[q.root][v], p.marginal[q.root][v]);
  for (int n = 0; n < q.size(); ++n) {
    int par = q.parent[n];
    if (par < 0) continue;
    if (p.parent[n] != par)
      throw InvalidArgument("kl_divergence: trees disagree on structure");
    for (int pv = 0; pv < 2; ++pv) {
      double w = q.marginal[par][pv];
      if (w <= 0.0) continue;
      for (int cv = 0; cv < 2; ++cv)
        d += w * kl_term(q.cpt[n][pv][cv], p.cpt[n][pv][cv]);
    }
  }
  return std::max(d, 0.0);
}

std::vector<LabelInfo> per_label_scores(const ChowLiuTree& tree) {
  const double h = joint_entropy(tree);
  std::vector<LabelInfo> out;
  out.reserve(tree.size());
  for (int i = 0; i < tree.size(); ++i) {
    const int ev[1] = {i};
    ConditionedTree cond = condition(tree, ev);
    double hc = joint_entropy(cond);
    out.push_back(LabelInfo{h - hc, hc, kl_divergence(cond, tree)});
  }
  return out;
}

}  // namespace iota
