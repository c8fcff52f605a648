#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace extopo::detail {

/// Link-cut forest over nodes 0..n-1 with a fixed key per node and
/// path-maximum queries. Splay-based, amortized O(log n) per operation.
class LinkCutForest {
 public:
  explicit LinkCutForest(std::vector<std::int64_t> keys)
      : key_(std::move(keys)), nodes_(key_.size()) {
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) nodes_[i].best = i;
  }

  /// Joins the trees of u and v with the edge u-v. They must be disconnected.
  void link(int u, int v) {
    make_root(u);
    nodes_[u].parent = v;
  }

  /// Removes the tree edge u-v.
  void cut(int u, int v) {
    make_root(u);
    access(v);
    Node& nv = nodes_[v];
    nodes_[nv.child[0]].parent = -1;
    nv.child[0] = -1;
    pull(v);
  }

  /// Node with the largest key on the tree path u..v (u and v connected).
  int path_max(int u, int v) {
    make_root(u);
    access(v);
    return nodes_[v].best;
  }

 private:
  struct Node {
    int child[2] = {-1, -1};
    int parent = -1;
    int best = -1;
    bool flip = false;
  };

  bool is_splay_root(int x) const {
    const int p = nodes_[x].parent;
    return p == -1 || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
  }

  void pull(int x) {
    Node& n = nodes_[x];
    n.best = x;
    for (int c : n.child) {
      if (c != -1 && key_[nodes_[c].best] > key_[n.best]) n.best = nodes_[c].best;
    }
  }

  void push(int x) {
    Node& n = nodes_[x];
    if (!n.flip) return;
    std::swap(n.child[0], n.child[1]);
    for (int c : n.child) {
      if (c != -1) nodes_[c].flip = !nodes_[c].flip;
    }
    n.flip = false;
  }

  void rotate(int x) {
    const int p = nodes_[x].parent;
    const int g = nodes_[p].parent;
    const int dir = nodes_[p].child[1] == x ? 1 : 0;
    if (!is_splay_root(p)) {
      Node& ng = nodes_[g];
      ng.child[ng.child[0] == p ? 0 : 1] = x;
    }
    nodes_[x].parent = g;
    const int moved = nodes_[x].child[1 - dir];
    nodes_[p].child[dir] = moved;
    if (moved != -1) nodes_[moved].parent = p;
    nodes_[x].child[1 - dir] = p;
    nodes_[p].parent = x;
    pull(p);
    pull(x);
  }

  void splay(int x) {
    stack_.clear();
    for (int y = x;; y = nodes_[y].parent) {
      stack_.push_back(y);
      if (is_splay_root(y)) break;
    }
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);
    while (!is_splay_root(x)) {
      const int p = nodes_[x].parent;
      if (!is_splay_root(p)) {
        const int g = nodes_[p].parent;
        const bool zigzig = (nodes_[g].child[0] == p) == (nodes_[p].child[0] == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  void access(int x) {
    int last = -1;
    for (int y = x; y != -1; y = nodes_[y].parent) {
      splay(y);
      nodes_[y].child[1] = last;
      pull(y);
      last = y;
    }
    splay(x);
  }

  void make_root(int x) {
    access(x);
    nodes_[x].flip = !nodes_[x].flip;
    push(x);
  }

  std::vector<std::int64_t> key_;
  std::vector<Node> nodes_;
  std::vector<int> stack_;
};

}  // namespace extopo::detail
