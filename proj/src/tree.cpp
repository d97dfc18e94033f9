#include "iota/tree.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "iota/csv.hpp"

namespace iota {

namespace {

struct UnionFind {
  std::vector<int> id;
  std::vector<int> sz;

  explicit UnionFind(int n) : id(n), sz(n, 1) { std::iota(id.begin(), id.end(), 0); }

  int root(int i) {
    while (i != id[i]) {
      id[i] = id[id[i]];
      i = id[i];
    }
    return i;
  }

  bool unite(int p, int q) {
    int i = root(p), j = root(q);
    if (i == j) return false;
    if (sz[i] < sz[j]) std::swap(i, j);
    id[j] = i;
    sz[i] += sz[j];
    return true;
  }
};

struct UndirectedEdge {
  int a, b;
  std::array<std::array<double, 2>, 2> joint;  // [value_a][value_b]
};

// Rooted parametrization from an undirected edge list with per-edge joints.
// Parent assignment is unique given the root; BFS with sorted adjacency
// fixes a deterministic topological order.
TreeDist assemble_rooted(int d, const std::vector<UndirectedEdge>& edges, int root,
                         const std::array<double, 2>& fallback_marginal) {
  TreeDist t;
  t.root = root;
  t.parent.assign(d, -1);
  t.marginal.assign(d, fallback_marginal);
  t.cpt.assign(d, {});
  t.order.clear();
  t.order.reserve(d);

  std::vector<std::vector<std::pair<int, int>>> adj(d);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].a].emplace_back(edges[e].b, static_cast<int>(e));
    adj[edges[e].b].emplace_back(edges[e].a, static_cast<int>(e));
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  std::vector<char> seen(d, 0);
  std::vector<int> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int p = queue[head];
    t.order.push_back(p);
    for (auto [c, e] : adj[p]) {
      if (seen[c]) continue;
      seen[c] = 1;
      t.parent[c] = p;
      // joint oriented [parent value][child value]
      std::array<std::array<double, 2>, 2> j;
      if (edges[e].a == p) {
        j = edges[e].joint;
      } else {
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) j[x][y] = edges[e].joint[y][x];
      }
      std::array<double, 2> mp = {j[0][0] + j[0][1], j[1][0] + j[1][1]};
      t.marginal[p] = mp;
      for (int pv = 0; pv < 2; ++pv) {
        if (mp[pv] > 0.0) {
          t.cpt[c][pv] = {j[pv][0] / mp[pv], j[pv][1] / mp[pv]};
        } else {
          t.cpt[c][pv] = {0.5, 0.5};  // zero-weight row, never reached
        }
      }
      t.marginal[c] = {j[0][0] + j[1][0], j[0][1] + j[1][1]};
      queue.push_back(c);
    }
  }
  if (static_cast<int>(queue.size()) != d)
    throw InvalidArgument("edges do not form a spanning tree");
  return t;
}

std::vector<UndirectedEdge> edges_from_dist(const TreeDist& t) {
  std::vector<UndirectedEdge> edges;
  edges.reserve(t.size() > 0 ? t.size() - 1 : 0);
  for (int n = 0; n < t.size(); ++n) {
    int p = t.parent[n];
    if (p < 0) continue;
    UndirectedEdge e;
    e.a = p;
    e.b = n;
    for (int pv = 0; pv < 2; ++pv)
      for (int cv = 0; cv < 2; ++cv) e.joint[pv][cv] = t.marginal[p][pv] * t.cpt[n][pv][cv];
    edges.push_back(e);
  }
  return edges;
}

}  // namespace

double TreeDist::entropy_bits() const {
  if (parent.empty()) return 0.0;
  double h = binary_entropy(marginal[root][1]);
  for (int n = 0; n < size(); ++n) {
    int p = parent[n];
    if (p < 0) continue;
    for (int pv = 0; pv < 2; ++pv)
      h += marginal[p][pv] * binary_entropy(cpt[n][pv][1]);
  }
  return h;
}

TreeDist reroot(const TreeDist& t, int new_root) {
  if (new_root < 0 || new_root >= t.size())
    throw InvalidArgument("reroot: unknown label id " + std::to_string(new_root));
  if (new_root == t.root) return t;
  return assemble_rooted(t.size(), edges_from_dist(t), new_root,
                         t.marginal[new_root]);
}

TreeDist condition_on_root_true(const TreeDist& t) {
  if (!(t.marginal[t.root][1] > 0.0))
    throw ZeroProbabilityEvidence("evidence label has probability 0");
  TreeDist out = t;
  out.marginal[out.root] = {0.0, 1.0};
  for (int n : out.order) {
    int p = out.parent[n];
    if (p < 0) continue;
    for (int cv = 0; cv < 2; ++cv)
      out.marginal[n][cv] = out.marginal[p][0] * out.cpt[n][0][cv] +
                            out.marginal[p][1] * out.cpt[n][1][cv];
  }
  return out;
}

ChowLiuTree::ChowLiuTree(std::shared_ptr<const Vocabulary> vocab,
                         std::vector<EdgeJoint> edges, int root,
                         std::array<double, 2> single_marginal)
    : vocab_(std::move(vocab)), edges_(std::move(edges)) {
  const int d = static_cast<int>(vocab_->size());
  if (static_cast<int>(edges_.size()) != std::max(d - 1, 0))
    throw InvalidArgument("tree needs exactly d-1 edges");
  build_adjacency();
  if (d == 1) {
    dist_.root = 0;
    dist_.parent = {-1};
    dist_.order = {0};
    dist_.marginal = {single_marginal};
    dist_.cpt.assign(1, {});
  } else {
    dist_ = rooted_at(root);
  }
}

void ChowLiuTree::build_adjacency() {
  adj_.assign(vocab_->size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adj_[edges_[e].a].emplace_back(edges_[e].b, static_cast<int>(e));
    adj_[edges_[e].b].emplace_back(edges_[e].a, static_cast<int>(e));
  }
}

ChowLiuTree ChowLiuTree::from_parameters(
    std::shared_ptr<const Vocabulary> vocab, const std::vector<int>& parent, int root,
    std::array<double, 2> root_marginal,
    const std::vector<std::array<std::array<double, 2>, 2>>& cpt) {
  const int d = static_cast<int>(vocab->size());
  TreeDist t;
  t.root = root;
  t.parent = parent;
  t.marginal.assign(d, {});
  t.cpt = cpt;
  t.cpt.resize(d);
  // topological order by repeated sweeps; inputs are tiny
  std::vector<char> placed(d, 0);
  t.order.clear();
  while (static_cast<int>(t.order.size()) < d) {
    bool progress = false;
    for (int n = 0; n < d; ++n) {
      if (placed[n]) continue;
      if (t.parent[n] < 0 || placed[t.parent[n]]) {
        placed[n] = 1;
        t.order.push_back(n);
        progress = true;
      }
    }
    if (!progress) throw InvalidArgument("parent links contain a cycle");
  }
  t.marginal[root] = root_marginal;
  for (int n : t.order) {
    int p = t.parent[n];
    if (p < 0) continue;
    for (int cv = 0; cv < 2; ++cv)
      t.marginal[n][cv] =
          t.marginal[p][0] * t.cpt[n][0][cv] + t.marginal[p][1] * t.cpt[n][1][cv];
  }

  std::vector<EdgeJoint> edges;
  for (const auto& ue : edges_from_dist(t)) {
    EdgeJoint e;
    e.a = ue.a;
    e.b = ue.b;
    e.prob = ue.joint;
    e.counts = ue.joint;
    PairJoint pj;
    pj.prob = ue.joint;
    for (int x = 0; x < 2; ++x) {
      pj.marginal_i[x] = ue.joint[x][0] + ue.joint[x][1];
      pj.marginal_j[x] = ue.joint[0][x] + ue.joint[1][x];
    }
    e.mi = mutual_information(pj);
    edges.push_back(e);
  }
  ChowLiuTree tree(std::move(vocab), std::move(edges), root, root_marginal);
  return tree;
}

double ChowLiuTree::total_mi() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.mi;
  return s;
}

TreeDist ChowLiuTree::rooted_at(int new_root) const {
  const int d = static_cast<int>(vocab_->size());
  if (new_root < 0 || new_root >= d)
    throw InvalidArgument("reroot: unknown label id " + std::to_string(new_root));
  if (d == 1) return dist_;
  std::vector<UndirectedEdge> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_)
    edges.push_back(UndirectedEdge{e.a, e.b, e.prob});
  // With d >= 2 every marginal is recomputed from the edge joints, so the
  // fallback is irrelevant; dist_ may still be empty during construction.
  std::array<double, 2> fallback =
      dist_.size() == d ? dist_.marginal[new_root] : std::array<double, 2>{0.5, 0.5};
  return assemble_rooted(d, edges, new_root, fallback);
}

void ChowLiuTree::export_edges_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write edge export: " + path);
  out << "parent,child,mi_bits\n";
  char buf[32];
  for (int n : dist_.order) {
    int p = dist_.parent[n];
    if (p < 0) continue;
    double mi = 0.0;
    for (const auto& e : edges_) {
      if ((e.a == p && e.b == n) || (e.a == n && e.b == p)) {
        mi = e.mi;
        break;
      }
    }
    std::snprintf(buf, sizeof(buf), "%.12g", mi);
    out << csv::join({vocab_->name(p), vocab_->name(n), buf}) << '\n';
  }
}

ChowLiuTree build_tree(const PairwiseStats& stats) {
  auto vocab = stats.vocab_ptr();
  const int d = static_cast<int>(vocab->size());
  if (d == 1)
    return ChowLiuTree(vocab, {}, 0, stats.smoothed_marginal(0));

  struct Cand {
    double mi;
    int lo, hi;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) cands.push_back({stats.mi(i, j), i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.mi != y.mi) return x.mi > y.mi;
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  });

  UnionFind uf(d);
  std::vector<EdgeJoint> edges;
  edges.reserve(d - 1);
  for (const auto& c : cands) {
    if (!uf.unite(c.lo, c.hi)) continue;
    PairJoint pj = stats.joint(c.lo, c.hi);
    EdgeJoint e;
    e.a = c.lo;
    e.b = c.hi;
    e.prob = pj.prob;
    e.counts = pj.counts;
    e.mi = c.mi;
    edges.push_back(e);
    if (static_cast<int>(edges.size()) == d - 1) break;
  }
  return ChowLiuTree(vocab, std::move(edges), 0);
}

ChowLiuTree reroot(const ChowLiuTree& tree, int new_root) {
  ChowLiuTree out = tree;
  if (new_root != tree.root()) {
    TreeDist d = tree.rooted_at(new_root);
    out = ChowLiuTree(tree.vocab_ptr(), tree.edges(), new_root,
                      d.marginal[new_root]);
  }
  return out;
}

}  // namespace iota
