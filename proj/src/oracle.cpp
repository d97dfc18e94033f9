#include "iota/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iota {

namespace {

void check_size(int d) {
  if (d < 1 || d > DenseJoint::kMaxLabels)
    throw InvalidArgument("dense joint supports 1..20 labels, got " +
                          std::to_string(d));
}

}  // namespace

DenseJoint expand(const TreeDist& dist) {
  check_size(dist.size());
  DenseJoint j;
  j.d = dist.size();
  j.table.assign(std::size_t{1} << j.d, 0.0);
  for (std::size_t mask = 0; mask < j.table.size(); ++mask) {
    double p = dist.marginal[dist.root][(mask >> dist.root) & 1];
    for (int n = 0; n < j.d; ++n) {
      int par = dist.parent[n];
      if (par < 0) continue;
      p *= dist.cpt[n][(mask >> par) & 1][(mask >> n) & 1];
    }
    j.table[mask] = p;
  }
  return j;
}

DenseJoint expand(const ChowLiuTree& tree) { return expand(tree.dist()); }

double exact_entropy(const DenseJoint& joint) {
  double h = 0.0;
  for (double p : joint.table) h -= xlog2x(p);
  return h;
}

DenseJoint exact_condition(const DenseJoint& joint, std::span<const int> evidence_true) {
  std::size_t required = 0;
  for (int e : evidence_true) {
    if (e < 0 || e >= joint.d)
      throw InvalidArgument("exact_condition: unknown label id " + std::to_string(e));
    required |= std::size_t{1} << e;
  }
  DenseJoint out;
  out.d = joint.d;
  out.table.assign(joint.table.size(), 0.0);
  double z = 0.0;
  for (std::size_t mask = 0; mask < joint.table.size(); ++mask) {
    if ((mask & required) == required) {
      out.table[mask] = joint.table[mask];
      z += joint.table[mask];
    }
  }
  if (!(z > 0.0)) throw ZeroProbabilityEvidence("evidence event has probability 0");
  for (double& p : out.table) p /= z;
  return out;
}

std::array<double, 2> exact_marginal(const DenseJoint& joint, int label) {
  std::array<double, 2> m = {0.0, 0.0};
  for (std::size_t mask = 0; mask < joint.table.size(); ++mask)
    m[(mask >> label) & 1] += joint.table[mask];
  return m;
}

double exact_kl(const DenseJoint& q, const DenseJoint& p) {
  if (q.d != p.d) throw InvalidArgument("exact_kl: dimension mismatch");
  double d = 0.0;
  for (std::size_t mask = 0; mask < q.table.size(); ++mask) {
    if (q.table[mask] <= 0.0) continue;
    if (p.table[mask] <= 0.0) return std::numeric_limits<double>::infinity();
    d += q.table[mask] * std::log2(q.table[mask] / p.table[mask]);
  }
  return std::max(d, 0.0);
}

std::vector<std::pair<int, int>> exhaustive_best_tree(
    const std::vector<std::vector<double>>& weight) {
  const int d = static_cast<int>(weight.size());
  if (d < 2 || d > 6)
    throw InvalidArgument("exhaustive tree search supports 2..6 labels");
  if (d == 2) return {{0, 1}};

  // Decode every Pruefer sequence of length d-2.
  std::vector<int> seq(d - 2, 0);
  std::vector<std::pair<int, int>> best;
  double best_total = -std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<int> degree(d, 1);
    for (int v : seq) ++degree[v];
    std::vector<std::pair<int, int>> edges;
    std::vector<char> used(d, 0);
    std::vector<int> work = seq;
    for (int v : work) {
      for (int leaf = 0; leaf < d; ++leaf) {
        if (degree[leaf] == 1 && !used[leaf]) {
          edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
          used[leaf] = 1;
          --degree[v];
          break;
        }
      }
    }
    int u = -1, w = -1;
    for (int n = 0; n < d; ++n) {
      if (!used[n] && degree[n] == 1) {
        if (u < 0)
          u = n;
        else
          w = n;
      }
    }
    edges.emplace_back(u, w);

    double total = 0.0;
    for (auto [a, b] : edges) total += weight[a][b];
    if (total > best_total) {
      best_total = total;
      best = edges;
    }

    int pos = d - 3;
    while (pos >= 0 && seq[pos] == d - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<std::pair<int, int>> exhaustive_best_tree(const PairwiseStats& stats) {
  const int d = static_cast<int>(stats.vocab().size());
  std::vector<std::vector<double>> w(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) w[i][j] = w[j][i] = stats.mi(i, j);
  return exhaustive_best_tree(w);
}

}  // namespace iota
