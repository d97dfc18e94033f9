#pragma once

#include <string>

#include "iota/tree.hpp"

namespace iota {

// Versioned JSON model document: options, full vocabulary, and per-tree
// sections (sample vocabulary, root, edges with raw 2x2 joint counts).
// Probabilities, CPTs and MI are rebuilt on load from counts + alpha, so a
// save/load round trip reproduces the model bit for bit.
std::string model_to_json(const TreeMixture& mixture);
TreeMixture model_from_json(const std::string& text);

void save_model(const TreeMixture& mixture, const std::string& path);
TreeMixture load_model(const std::string& path);

}  // namespace iota
