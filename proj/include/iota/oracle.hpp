#pragma once

#include <span>
#include <utility>
#include <vector>

#include "iota/tree.hpp"

namespace iota {

// Explicit 2^d joint table for brute-force reference computations.
// Assignment index uses bit i for label i (1 = true).
struct DenseJoint {
  int d = 0;
  std::vector<double> table;

  static constexpr int kMaxLabels = 20;
};

DenseJoint expand(const TreeDist& dist);
DenseJoint expand(const ChowLiuTree& tree);

double exact_entropy(const DenseJoint& joint);

// Zeroes assignments violating the evidence, renormalizes.
DenseJoint exact_condition(const DenseJoint& joint, std::span<const int> evidence_true);

std::array<double, 2> exact_marginal(const DenseJoint& joint, int label);

double exact_kl(const DenseJoint& q, const DenseJoint& p);

// Enumerates all d^(d-2) labeled trees via Pruefer sequences (d <= 6) and
// returns the edge set with maximal total MI, edges as (lo, hi) pairs.
std::vector<std::pair<int, int>> exhaustive_best_tree(const PairwiseStats& stats);

// Same enumeration over an explicit symmetric weight matrix.
std::vector<std::pair<int, int>> exhaustive_best_tree(
    const std::vector<std::vector<double>>& weight);

}  // namespace iota
