#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

namespace fuzzybisim {

/// Edge of a graph whose degrees have been replaced by their rank in a
/// degree pool (rank 0 is degree 0 and never occurs on an edge).
struct RankedEdge {
  std::uint32_t src;
  std::uint32_t label;
  std::uint32_t dst;
  std::uint32_t rank;
};

namespace detail {

/*
 * Coarsest stable refinement for max-degree signatures.
 *
 * Two vertices stay together iff for every edge label r and every final block
 * C the maximum rank of their r-edges into C agrees. This is exactly the
 * greatest crisp bisimulation of a fuzzy labeled graph once the initial
 * partition separates different vertex labels.
 *
 * Compound-block scheme in the style of Paige and Tarjan: the partition P is
 * kept stable with respect to every block of a coarser partition X. A compound
 * block S of X holding several P-blocks is split by detaching its smaller
 * leading P-block B; only in-edges of B are scanned. For every (source, label,
 * compound block) we keep the multiset of edge ranks, so the maximum over
 * S - B is available after moving the ranks of edges into B away.
 */
class MaxSignatureRefiner {
public:
  MaxSignatureRefiner(std::size_t n, std::span<const std::uint32_t> initial,
                      std::span<const RankedEdge> edges)
      : n_(n), edges_(edges.begin(), edges.end()) {
    build_in_index();
    init_partition(initial);
    init_records();
    stabilize_initial();
  }

  std::vector<std::uint32_t> run() {
    while (!work_.empty()) {
      std::uint32_t c = work_.back();
      work_.pop_back();
      compounds_[c].queued = false;
      if (compounds_[c].blocks.size() < 2)
        continue;
      split_compound(c);
    }
    return block_of_;
  }

  std::size_t splitter_rounds() const { return rounds_; }

private:
  struct Block {
    std::uint32_t begin, end;
    std::uint32_t compound;
    std::uint32_t slot; // index inside compound's block list
    std::uint32_t size() const { return end - begin; }
  };
  struct Compound {
    std::vector<std::uint32_t> blocks;
    bool queued = false;
  };
  struct Record {
    std::uint32_t src, label;
    std::map<std::uint32_t, std::uint32_t> ranks; // rank -> multiplicity
    std::uint64_t stamp = 0;
    std::uint32_t child = 0;

    std::uint32_t max_rank() const { return ranks.empty() ? 0 : ranks.rbegin()->first; }
  };

  void build_in_index() {
    in_offset_.assign(n_ + 1, 0);
    for (const auto &e : edges_)
      ++in_offset_[e.dst + 1];
    for (std::size_t v = 0; v < n_; ++v)
      in_offset_[v + 1] += in_offset_[v];
    std::vector<std::uint32_t> fill(in_offset_.begin(), in_offset_.end() - 1);
    in_edges_.resize(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i)
      in_edges_[fill[edges_[i].dst]++] = static_cast<std::uint32_t>(i);
  }

  void init_partition(std::span<const std::uint32_t> initial) {
    // group by initial label, in order of first appearance
    std::vector<std::uint32_t> order(n_);
    for (std::size_t v = 0; v < n_; ++v)
      order[v] = static_cast<std::uint32_t>(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return initial[a] < initial[b]; });
    elems_ = order;
    pos_.assign(n_, 0);
    block_of_.assign(n_, 0);
    compounds_.push_back({});
    for (std::size_t i = 0; i < n_;) {
      std::size_t j = i;
      while (j < n_ && initial[elems_[j]] == initial[elems_[i]])
        ++j;
      new_block(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0);
      i = j;
    }
    for (std::size_t i = 0; i < n_; ++i)
      pos_[elems_[i]] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t new_block(std::uint32_t begin, std::uint32_t end, std::uint32_t compound) {
    auto id = static_cast<std::uint32_t>(blocks_.size());
    blocks_.push_back({begin, end, compound,
                       static_cast<std::uint32_t>(compounds_[compound].blocks.size())});
    compounds_[compound].blocks.push_back(id);
    for (std::uint32_t i = begin; i < end; ++i)
      block_of_[elems_[i]] = id;
    return id;
  }

  void init_records() {
    // edges sorted by (src, label) share one record per pair
    std::vector<std::uint32_t> order(edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return std::tie(edges_[a].src, edges_[a].label) < std::tie(edges_[b].src, edges_[b].label);
    });
    edge_record_.assign(edges_.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto &e = edges_[order[i]];
      if (i == 0 || edges_[order[i - 1]].src != e.src || edges_[order[i - 1]].label != e.label)
        records_.push_back({e.src, e.label, {}, 0, 0});
      ++records_.back().ranks[e.rank];
      edge_record_[order[i]] = static_cast<std::uint32_t>(records_.size() - 1);
    }
  }

  // Make P stable with respect to the single compound block V.
  void stabilize_initial() {
    std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>> keys(n_);
    for (const auto &rec : records_)
      keys[rec.src].emplace_back(rec.label, rec.max_rank(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t v = 0; v < n_; ++v)
      if (!keys[v].empty())
        touched.push_back(static_cast<std::uint32_t>(v));
    split_by_keys(touched, keys);
    if (compounds_[0].blocks.size() >= 2)
      enqueue(0);
  }

  void enqueue(std::uint32_t c) {
    if (!compounds_[c].queued && compounds_[c].blocks.size() >= 2) {
      compounds_[c].queued = true;
      work_.push_back(c);
    }
  }

  std::uint32_t least_element(std::uint32_t b) const {
    std::uint32_t best = UINT32_MAX;
    for (std::uint32_t i = blocks_[b].begin; i < blocks_[b].end; ++i)
      best = std::min(best, elems_[i]);
    return best;
  }

  void split_compound(std::uint32_t c) {
    ++rounds_;
    auto &list = compounds_[c].blocks;
    std::uint32_t b1 = list[0], b2 = list[1];
    std::uint32_t chosen;
    if (blocks_[b1].size() != blocks_[b2].size())
      chosen = blocks_[b1].size() < blocks_[b2].size() ? b1 : b2;
    else
      chosen = least_element(b1) < least_element(b2) ? b1 : b2;

    // detach `chosen` into a compound block of its own
    std::uint32_t slot = blocks_[chosen].slot;
    std::uint32_t last = list.back();
    list[slot] = last;
    blocks_[last].slot = slot;
    list.pop_back();
    auto fresh = static_cast<std::uint32_t>(compounds_.size());
    compounds_.push_back({{chosen}, false});
    blocks_[chosen].compound = fresh;
    blocks_[chosen].slot = 0;
    enqueue(c);

    // move the ranks of edges entering `chosen` into per-source child records
    ++stamp_;
    std::vector<std::uint32_t> split_records;
    for (std::uint32_t i = blocks_[chosen].begin; i < blocks_[chosen].end; ++i) {
      for (std::uint32_t k = in_offset_[elems_[i]]; k < in_offset_[elems_[i] + 1]; ++k) {
        std::uint32_t e = in_edges_[k];
        std::uint32_t r = edge_record_[e];
        if (records_[r].stamp != stamp_) {
          records_[r].stamp = stamp_;
          records_[r].child = static_cast<std::uint32_t>(records_.size());
          records_.push_back({records_[r].src, records_[r].label, {}, 0, 0});
          split_records.push_back(r);
        }
        std::uint32_t child = records_[r].child;
        auto it = records_[r].ranks.find(edges_[e].rank);
        if (--it->second == 0)
          records_[r].ranks.erase(it);
        ++records_[child].ranks[edges_[e].rank];
        edge_record_[e] = child;
      }
    }

    // signature of a touched source: per label, (max into chosen, max into rest)
    std::vector<std::uint32_t> touched;
    for (auto r : split_records) {
      std::uint32_t src = records_[r].src;
      if (keys_.size() < n_)
        keys_.resize(n_);
      if (keys_[src].empty())
        touched.push_back(src);
      keys_[src].emplace_back(records_[r].label, records_[records_[r].child].max_rank(),
                              records_[r].max_rank());
    }
    split_by_keys(touched, keys_);
  }

  // Splits blocks so that touched vertices end up grouped by their key and
  // apart from untouched ones. Clears keys of touched vertices.
  void split_by_keys(
      const std::vector<std::uint32_t> &touched,
      std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>> &keys) {
    if (touched.empty())
      return;
    for (auto v : touched)
      std::sort(keys[v].begin(), keys[v].end());
    std::vector<std::uint32_t> order = touched;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      if (block_of_[a] != block_of_[b])
        return block_of_[a] < block_of_[b];
      if (keys[a] != keys[b])
        return keys[a] < keys[b];
      return a < b;
    });
    for (std::size_t i = 0; i < order.size();) {
      std::uint32_t blk = block_of_[order[i]];
      std::size_t j = i;
      while (j < order.size() && block_of_[order[j]] == blk)
        ++j;
      // groups inside [i, j)
      std::vector<std::pair<std::size_t, std::size_t>> groups;
      for (std::size_t g = i; g < j;) {
        std::size_t h = g;
        while (h < j && keys[order[h]] == keys[order[g]])
          ++h;
        groups.emplace_back(g, h);
        g = h;
      }
      const bool all_touched = (j - i) == blocks_[blk].size();
      if (!(all_touched && groups.size() == 1)) {
        // with no untouched members, the largest group keeps the old block
        std::size_t keep = groups.size();
        if (all_touched) {
          keep = 0;
          for (std::size_t g = 1; g < groups.size(); ++g)
            if (groups[g].second - groups[g].first > groups[keep].second - groups[keep].first)
              keep = g;
        }
        for (std::size_t g = 0; g < groups.size(); ++g) {
          if (g == keep)
            continue;
          carve(blk, order, groups[g].first, groups[g].second);
        }
        enqueue(blocks_[blk].compound);
      }
      i = j;
    }
    for (auto v : touched)
      keys[v].clear();
  }

  // Moves order[from, to) (all members of blk) into a new block in blk's compound.
  void carve(std::uint32_t blk, const std::vector<std::uint32_t> &order, std::size_t from,
             std::size_t to) {
    Block &b = blocks_[blk];
    for (std::size_t k = from; k < to; ++k) {
      std::uint32_t v = order[k];
      std::uint32_t last = b.end - 1;
      std::uint32_t w = elems_[last];
      std::swap(elems_[pos_[v]], elems_[last]);
      pos_[w] = pos_[v];
      pos_[v] = last;
      --b.end;
    }
    std::uint32_t begin = b.end;
    std::uint32_t end = begin + static_cast<std::uint32_t>(to - from);
    new_block(begin, end, b.compound);
  }

  std::size_t n_;
  std::vector<RankedEdge> edges_;
  std::vector<std::uint32_t> in_offset_, in_edges_;
  std::vector<std::uint32_t> elems_, pos_, block_of_;
  std::vector<Block> blocks_;
  std::vector<Compound> compounds_;
  std::vector<std::uint32_t> work_;
  std::vector<Record> records_;
  std::vector<std::uint32_t> edge_record_;
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>> keys_;
  std::uint64_t stamp_ = 0;
  std::size_t rounds_ = 0;
};

} // namespace detail

/// Coarsest refinement of `initial` (a block label per vertex) in which any
/// two vertices of a block have, for every label and block, the same maximum
/// edge rank into that block. Returns a block id per vertex.
inline std::vector<std::uint32_t> refine_max_signature(std::size_t vertex_count,
                                                       std::span<const std::uint32_t> initial,
                                                       std::span<const RankedEdge> edges) {
  return detail::MaxSignatureRefiner(vertex_count, initial, edges).run();
}

} // namespace fuzzybisim
