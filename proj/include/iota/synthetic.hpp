#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "iota/corpus.hpp"

namespace iota {

// Generative description of a tree-factorized (forest allowed) distribution
// over binary labels. Nodes without a parent carry p_true; child nodes carry
// p(child=true | parent=false/true).
struct TreeSpecNode {
  std::string label;
  int parent = -1;  // index into nodes, -1 for a root
  double p_true = 0.5;                        // roots only
  std::array<double, 2> p_true_given = {0.5, 0.5};  // children only, [parent=F, parent=T]
};

struct TreeSpec {
  std::vector<TreeSpecNode> nodes;
  double confidence = 1.0;  // confidence attached to sampled present labels

  static constexpr std::size_t kMaxLabels = 20;

  // Throws InvalidArgument on cycles, duplicate labels, or probabilities
  // outside [0,1].
  void validate() const;

  // Nodes listed in an order where parents precede children.
  std::vector<int> topological_order() const;

  static TreeSpec from_json_file(const std::string& path);
  static TreeSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

// Each image is an independent sample from the spec; present labels are
// emitted with the spec's confidence and no verification flag.
AnnotationCorpus generate_synthetic_corpus(const TreeSpec& spec, std::size_t n_images,
                                           std::uint64_t seed);

}  // namespace iota
