#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "balancekit/errors.hpp"

namespace balancekit {

// One raw matrix entry, 0-based.
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Square matrix in coordinate form, possibly with duplicates and diagonal
// entries. This is the ingestion type; canonicalize() turns it into a
// BalancingProblem.
struct RawMatrix {
  int n = 0;
  std::vector<Triplet> entries;
};

inline RawMatrix to_raw(const std::vector<std::vector<double>>& dense) {
  RawMatrix raw;
  raw.n = static_cast<int>(dense.size());
  for (int i = 0; i < raw.n; ++i) {
    if (static_cast<int>(dense[i].size()) != raw.n)
      throw DimensionMismatch("dense matrix is not square");
    for (int j = 0; j < raw.n; ++j)
      if (dense[i][j] != 0.0) raw.entries.push_back({i, j, dense[i][j]});
  }
  return raw;
}

// Off-diagonal non-zero of the canonical matrix, weight > 0.
struct Arc {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// Canonical problem: non-negative weights, zero diagonal, arcs sorted by
// (from, to), and the arc digraph strongly connected. Immutable after
// construction and safe to share across threads.
struct BalancingProblem {
  int n = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out_adj;  // arc indices leaving node i
  std::vector<std::vector<int>> in_adj;   // arc indices entering node i
  double a_min = 0.0;
  double total_weight = 0.0;
  double w = 0.0;  // total_weight / a_min, >= 1
  std::size_t m = 0;

  std::size_t degree(int i) const { return out_adj[i].size() + in_adj[i].size(); }
};

namespace detail {

// abs, drop diagonal and exact zeros, sum duplicates, sort by (row, col).
inline std::vector<Triplet> canonical_triplets(const RawMatrix& raw) {
  if (raw.n < 1) throw DimensionMismatch("matrix dimension must be >= 1");
  std::vector<Triplet> kept;
  kept.reserve(raw.entries.size());
  for (const Triplet& t : raw.entries) {
    if (t.row < 0 || t.row >= raw.n || t.col < 0 || t.col >= raw.n)
      throw DimensionMismatch("entry index out of range");
    if (t.row == t.col) continue;
    double v = std::fabs(t.value);
    if (v == 0.0) continue;
    if (!std::isfinite(v)) throw OverflowError("non-finite input entry");
    kept.push_back({t.row, t.col, v});
  }
  std::sort(kept.begin(), kept.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  for (const Triplet& t : kept) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
      merged.back().value += t.value;
    else
      merged.push_back(t);
  }
  return merged;
}

// Iterative Tarjan; returns the SCC id of each node, ids in reverse
// topological order of the condensation.
inline std::vector<int> scc_ids(int n, const std::vector<std::vector<int>>& succ,
                                int& scc_count) {
  constexpr int kUnvisited = -1;
  std::vector<int> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  struct Frame {
    int v;
    std::size_t next_child;
  };
  std::vector<Frame> call;
  int next_index = 0;
  scc_count = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_child < succ[f.v].size()) {
        int child = succ[f.v][f.next_child++];
        if (index[child] == kUnvisited) {
          index[child] = low[child] = next_index++;
          stack.push_back(child);
          on_stack[child] = true;
          call.push_back({child, 0});
        } else if (on_stack[child]) {
          low[f.v] = std::min(low[f.v], index[child]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int u = stack.back();
            stack.pop_back();
            on_stack[u] = false;
            comp[u] = scc_count;
            if (u == v) break;
          }
          ++scc_count;
        }
      }
    }
  }
  return comp;
}

inline BalancingProblem build_problem(int n, const std::vector<Triplet>& arcs) {
  BalancingProblem p;
  p.n = n;
  p.arcs.reserve(arcs.size());
  p.out_adj.assign(n, {});
  p.in_adj.assign(n, {});
  p.a_min = std::numeric_limits<double>::infinity();
  for (const Triplet& t : arcs) {
    int idx = static_cast<int>(p.arcs.size());
    p.arcs.push_back({t.row, t.col, t.value});
    p.out_adj[t.row].push_back(idx);
    p.in_adj[t.col].push_back(idx);
    p.a_min = std::min(p.a_min, t.value);
    p.total_weight += t.value;  // canonical (from, to) order
  }
  p.m = p.arcs.size();
  p.w = p.total_weight / p.a_min;
  return p;
}

}  // namespace detail

// Canonical form of a raw square matrix: absolute values, diagonal and zero
// entries dropped, duplicates summed. Throws EmptyMatrix when nothing is
// left and NotBalanceable when the arc digraph is not strongly connected
// (balanceability is equivalent to strong connectivity).
inline BalancingProblem canonicalize(const RawMatrix& raw) {
  std::vector<Triplet> arcs = detail::canonical_triplets(raw);
  if (arcs.empty()) throw EmptyMatrix("no off-diagonal non-zero entries");

  std::vector<std::vector<int>> succ(raw.n);
  for (const Triplet& t : arcs) succ[t.row].push_back(t.col);
  int scc_count = 0;
  std::vector<int> comp = detail::scc_ids(raw.n, succ, scc_count);
  if (scc_count != 1)
    throw NotBalanceable("arc digraph is not strongly connected (" +
                         std::to_string(scc_count) + " components)");
  return detail::build_problem(raw.n, arcs);
}

inline BalancingProblem canonicalize(const std::vector<std::vector<double>>& dense) {
  return canonicalize(to_raw(dense));
}

// One strongly connected block of a decomposed matrix. nodes[k] is the
// original index of the block's node k.
struct SccComponent {
  BalancingProblem problem;
  std::vector<int> nodes;
};

struct SccSplit {
  std::vector<SccComponent> components;  // one per non-trivial SCC
  std::vector<Arc> residue;              // arcs between SCCs, original indices
};

// Splits a raw matrix into independently balanceable sub-problems, one per
// strongly connected component with at least one arc. Arcs crossing
// components lie on no directed cycle and can never be balanced; they are
// returned as residue instead of being dropped silently.
inline SccSplit scc_split(const RawMatrix& raw) {
  std::vector<Triplet> arcs = detail::canonical_triplets(raw);
  std::vector<std::vector<int>> succ(raw.n);
  for (const Triplet& t : arcs) succ[t.row].push_back(t.col);
  int scc_count = 0;
  std::vector<int> comp = detail::scc_ids(raw.n, succ, scc_count);

  SccSplit split;
  std::vector<std::vector<Triplet>> comp_arcs(scc_count);
  for (const Triplet& t : arcs) {
    if (comp[t.row] == comp[t.col])
      comp_arcs[comp[t.row]].push_back(t);
    else
      split.residue.push_back({t.row, t.col, t.value});
  }
  for (int c = 0; c < scc_count; ++c) {
    if (comp_arcs[c].empty()) continue;  // trivial SCC, nothing to balance
    std::vector<int> nodes;
    for (int v = 0; v < raw.n; ++v)
      if (comp[v] == c) nodes.push_back(v);
    std::vector<int> local(raw.n, -1);
    for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = static_cast<int>(k);
    std::vector<Triplet> renamed;
    renamed.reserve(comp_arcs[c].size());
    for (const Triplet& t : comp_arcs[c])
      renamed.push_back({local[t.row], local[t.col], t.value});
    SccComponent component;
    component.problem = detail::build_problem(static_cast<int>(nodes.size()), renamed);
    component.nodes = std::move(nodes);
    split.components.push_back(std::move(component));
  }
  return split;
}

inline SccSplit scc_split(const std::vector<std::vector<double>>& dense) {
  return scc_split(to_raw(dense));
}

}  // namespace balancekit
