#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/coxeter.hpp"
#include "ungar/poset.hpp"

namespace ungar {

// Chain-link fence drawing of the heap of a sorting word, types A and B.
// Every vertex sits on the row of its generator and every cover edge runs one
// unit right and one unit up or down; x coordinates follow by rigid
// propagation and are normalized so the leftmost vertex has x = 0.  Rotating
// to diagonal coordinates (x-y, x+y) and halving gives an injection into a
// rectangle poset that restricts to the heap order.
struct HeapEmbedding {
  FinitePoset heap;
  std::vector<int> x, y;    // fence coordinates
  std::vector<int> gx, gy;  // grid coordinates, from 0
  int width = 0, height = 0;
};

inline HeapEmbedding heap_rectangle_embedding(const CoxeterSpec& spec, const CoxWord& word) {
  if (spec.type != CoxType::A && spec.type != CoxType::B)
    throw invalid_input_error("rectangle embedding is defined for types A and B");
  const int k = static_cast<int>(word.size());
  if (k == 0) throw invalid_input_error("cannot embed an empty word");

  HeapEmbedding e;
  e.heap = heap_poset(spec, word);
  e.y.resize(k);
  for (int i = 0; i < k; ++i) e.y[i] = spec.type == CoxType::A ? word[i] : word[i] + 1;

  // Rigid solve: x changes by exactly one along every cover edge.
  e.x.assign(k, 0);
  std::vector<char> seen(k, 0);
  std::vector<std::vector<std::pair<int, int>>> nbr(k);  // (other, delta)
  for (auto [a, b] : e.heap.covers()) {
    nbr[a].push_back({b, +1});
    nbr[b].push_back({a, -1});
  }
  std::vector<int> stack;
  for (int root = 0; root < k; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    e.x[root] = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [u, d] : nbr[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          e.x[u] = e.x[v] + d;
          stack.push_back(u);
        } else if (e.x[u] != e.x[v] + d) {
          throw verification_error("embedding violated: cover edge is not a unit step");
        }
      }
    }
  }
  int minx = *std::min_element(e.x.begin(), e.x.end());
  for (int& v : e.x) v -= minx;

  // Diagonal coordinates; covers move one of them by two and fix the other,
  // so each must have a single parity.
  std::vector<int> d1(k), d2(k);
  for (int i = 0; i < k; ++i) {
    d1[i] = e.x[i] - e.y[i];
    d2[i] = e.x[i] + e.y[i];
  }
  int m1 = *std::min_element(d1.begin(), d1.end());
  int m2 = *std::min_element(d2.begin(), d2.end());
  e.gx.resize(k);
  e.gy.resize(k);
  for (int i = 0; i < k; ++i) {
    if ((d1[i] - m1) % 2 != 0 || (d2[i] - m2) % 2 != 0)
      throw verification_error("embedding violated: diagonal parity mismatch");
    e.gx[i] = (d1[i] - m1) / 2;
    e.gy[i] = (d2[i] - m2) / 2;
  }
  e.width = *std::max_element(e.gx.begin(), e.gx.end()) + 1;
  e.height = *std::max_element(e.gy.begin(), e.gy.end()) + 1;
  return e;
}

// The grid map must be injective and must carry the heap order to the product
// order exactly.
inline void verify_embedding_order(const HeapEmbedding& e) {
  const int k = e.heap.size();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      bool grid_leq = e.gx[i] <= e.gx[j] && e.gy[i] <= e.gy[j];
      if (e.gx[i] == e.gx[j] && e.gy[i] == e.gy[j])
        throw verification_error("embedding violated: two letters share a cell");
      if (e.heap.leq(i, j) != grid_leq)
        throw verification_error("embedding violated: heap order differs from product order");
    }
}

}  // namespace ungar
