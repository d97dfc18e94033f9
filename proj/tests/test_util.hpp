#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "iota/common.hpp"
#include "iota/corpus.hpp"
#include "iota/synthetic.hpp"
#include "iota/tree.hpp"

namespace testutil {

inline std::shared_ptr<const iota::Vocabulary> make_vocab(
    int d, std::int64_t image_count = 1000) {
  std::vector<std::string> names;
  std::vector<std::int64_t> freq;
  for (int i = 0; i < d; ++i) {
    names.push_back("l" + std::to_string(i));
    freq.push_back(image_count / 2);
  }
  return std::make_shared<iota::Vocabulary>(std::move(names), std::move(freq),
                                            image_count);
}

inline double random_prob(iota::Rng& rng, double lo = 0.05, double hi = 0.95) {
  return lo + (hi - lo) * rng.next_unit();
}

// Random recursive tree rooted at 0 with random marginal and CPTs.
inline iota::ChowLiuTree random_tree(int d, iota::Rng& rng) {
  std::vector<int> parent(d, -1);
  for (int i = 1; i < d; ++i) parent[i] = static_cast<int>(rng.next_index(i));
  std::vector<std::array<std::array<double, 2>, 2>> cpt(d);
  for (int i = 1; i < d; ++i) {
    for (int pv = 0; pv < 2; ++pv) {
      double p = random_prob(rng);
      cpt[i][pv] = {1.0 - p, p};
    }
  }
  double r = random_prob(rng);
  return iota::ChowLiuTree::from_parameters(make_vocab(d), parent, 0,
                                            {1.0 - r, r}, cpt);
}

// Random generative spec with the same shape conventions.
inline iota::TreeSpec random_tree_spec(int d, iota::Rng& rng) {
  iota::TreeSpec spec;
  for (int i = 0; i < d; ++i) {
    iota::TreeSpecNode n;
    n.label = "l" + std::to_string(i);
    if (i > 0) {
      n.parent = static_cast<int>(rng.next_index(i));
      n.p_true_given = {random_prob(rng), random_prob(rng)};
    } else {
      n.p_true = random_prob(rng);
    }
    spec.nodes.push_back(n);
  }
  return spec;
}

// Writes text to a file under the build's working directory and returns the path.
// Scratch file under the system temp directory; overwritten freely.
inline std::string write_temp(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "iota-tests";
  std::filesystem::create_directories(dir);
  std::string path = (dir / name).string();
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace testutil
