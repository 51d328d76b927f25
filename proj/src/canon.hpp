#pragma once

#include <vector>

namespace skein::detail {

// Minimum over roots and both orientations of a breadth-first dart labeling
// code: per vertex, its degree followed by (twin label, color) per dart.
// sigma(d, reversed) steps around the vertex of d. The map must be connected.
template <class Sigma, class Color>
std::vector<int> canonical_code(const std::vector<int>& darts, int capacity, Sigma sigma, Color color) {
  std::vector<int> best;
  bool have = false;
  std::vector<int> label(capacity, -1);
  std::vector<int> order, starts, queue;
  order.reserve(darts.size());
  queue.reserve(darts.size() + 1);
  std::vector<int> code;
  code.reserve(3 * darts.size());
  for (int pass = 0; pass < 2; ++pass) {
    bool rev = pass == 1;
    for (int root : darts) {
      for (int d : darts) label[d] = -1;
      order.clear();
      starts.clear();
      queue.clear();
      queue.push_back(root);
      int next = 0;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int d = queue[qi];
        if (label[d] >= 0) continue;
        starts.push_back(static_cast<int>(order.size()));
        int x = d;
        do {
          label[x] = next++;
          order.push_back(x);
          queue.push_back(x ^ 1);
          x = sigma(x, rev);
        } while (x != d);
      }
      code.clear();
      bool smaller = !have;
      bool abort = false;
      std::size_t si = 0;
      auto emit = [&](int v) {
        if (!smaller) {
          int b = best[code.size()];
          if (v > b) {
            abort = true;
            return;
          }
          if (v < b) smaller = true;
        }
        code.push_back(v);
      };
      for (std::size_t i = 0; i < order.size() && !abort; ++i) {
        if (si < starts.size() && starts[si] == static_cast<int>(i)) {
          std::size_t end = si + 1 < starts.size() ? starts[si + 1] : order.size();
          emit(static_cast<int>(end - i));
          ++si;
          if (abort) break;
        }
        emit(label[order[i] ^ 1]);
        if (abort) break;
        emit(color(order[i]));
      }
      if (!abort && smaller) {
        best = code;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace skein::detail
