#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fuzzybisim {

/*
 * Lowest common ancestor over a rooted tree given by child lists.
 * Euler tour plus a sparse table of minimum-depth positions:
 * O(n log n) preprocessing, O(1) per query.
 */
class EulerTourLca {
public:
  EulerTourLca() = default;

  explicit EulerTourLca(const std::vector<std::vector<std::uint32_t>> &children,
                        std::uint32_t root = 0) {
    const std::size_t n = children.size();
    if (n == 0)
      return;
    first_.assign(n, 0);
    tour_.reserve(2 * n);
    depth_.reserve(2 * n);

    // iterative DFS; frame = (node, next child index)
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
    first_[root] = 0;
    tour_.push_back(root);
    depth_.push_back(0);
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      if (next < children[node].size()) {
        std::uint32_t child = children[node][next++];
        std::uint32_t d = static_cast<std::uint32_t>(stack.size());
        stack.emplace_back(child, 0);
        first_[child] = static_cast<std::uint32_t>(tour_.size());
        tour_.push_back(child);
        depth_.push_back(d);
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          tour_.push_back(stack.back().first);
          depth_.push_back(static_cast<std::uint32_t>(stack.size() - 1));
        }
      }
    }

    const std::size_t m = tour_.size();
    table_.emplace_back(m);
    for (std::size_t i = 0; i < m; ++i)
      table_[0][i] = static_cast<std::uint32_t>(i);
    for (std::size_t k = 1; (std::size_t{1} << k) <= m; ++k) {
      const std::size_t half = std::size_t{1} << (k - 1);
      const auto &prev = table_[k - 1];
      std::vector<std::uint32_t> row(m - (std::size_t{1} << k) + 1);
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::uint32_t a = prev[i], b = prev[i + half];
        row[i] = depth_[a] <= depth_[b] ? a : b;
      }
      table_.push_back(std::move(row));
    }
  }

  std::uint32_t lca(std::uint32_t u, std::uint32_t v) const {
    std::size_t lo = first_.at(u), hi = first_.at(v);
    if (lo > hi)
      std::swap(lo, hi);
    const std::size_t width = hi - lo + 1;
    const std::size_t k = std::bit_width(width) - 1;
    std::uint32_t a = table_[k][lo];
    std::uint32_t b = table_[k][hi + 1 - (std::size_t{1} << k)];
    return tour_[depth_[a] <= depth_[b] ? a : b];
  }

private:
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> tour_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<std::uint32_t>> table_;
};

} // namespace fuzzybisim
