#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzybisim/degree.hpp"
#include "fuzzybisim/lca.hpp"
#include "fuzzybisim/relation.hpp"

namespace fuzzybisim {

class PartitionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string element_name(const std::vector<std::string> *names, std::uint32_t x) {
  if (names && x < names->size())
    return (*names)[x];
  return std::to_string(x);
}

} // namespace detail

/// Partition into disjoint non-empty blocks. Canonical form: each block
/// sorted, blocks ordered by their least element.
class CrispPartition {
public:
  CrispPartition() = default;

  explicit CrispPartition(std::vector<std::vector<std::uint32_t>> blocks)
      : blocks_(std::move(blocks)) {
    std::vector<std::uint32_t> all;
    for (auto &b : blocks_) {
      if (b.empty())
        throw PartitionError("partition block is empty");
      std::sort(b.begin(), b.end());
      all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto &a, const auto &b) { return a.front() < b.front(); });
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
      throw PartitionError("partition blocks overlap");
  }

  /// block_of[x] is an arbitrary block label for element x.
  static CrispPartition from_block_ids(const std::vector<std::uint32_t> &block_of) {
    std::vector<std::vector<std::uint32_t>> blocks;
    std::vector<std::int64_t> slot;
    for (std::size_t x = 0; x < block_of.size(); ++x) {
      std::uint32_t b = block_of[x];
      if (b >= slot.size())
        slot.resize(b + 1, -1);
      if (slot[b] < 0) {
        slot[b] = static_cast<std::int64_t>(blocks.size());
        blocks.emplace_back();
      }
      blocks[static_cast<std::size_t>(slot[b])].push_back(static_cast<std::uint32_t>(x));
    }
    return CrispPartition(std::move(blocks));
  }

  /// Classes of an equivalence relation (the relation is assumed to be one).
  static CrispPartition from_equivalence(const CrispRelation &r) {
    std::vector<std::uint32_t> block_of(r.rows(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t x = 0; x < r.rows(); ++x) {
      if (block_of[x] != UINT32_MAX)
        continue;
      for (std::size_t y = x; y < r.cols(); ++y)
        if (r.contains(x, y))
          block_of[y] = next;
      block_of[x] = next++;
    }
    return from_block_ids(block_of);
  }

  const std::vector<std::vector<std::uint32_t>> &blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  std::size_t element_count() const {
    std::size_t n = 0;
    for (const auto &b : blocks_)
      n += b.size();
    return n;
  }

  /// Equivalence relation on {0..n-1}, n = 1 + largest element.
  CrispRelation to_relation() const {
    std::size_t n = 0;
    for (const auto &b : blocks_)
      n = std::max<std::size_t>(n, b.back() + 1);
    CrispRelation r(n, n);
    for (const auto &b : blocks_)
      for (auto x : b)
        for (auto y : b)
          r.insert(x, y);
    return r;
  }

  /// Brace notation, e.g. {{s1},{s2,s5},{s3,s4}}.
  std::string to_text(const std::vector<std::string> *names = nullptr) const {
    std::string out = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i)
        out += ',';
      out += '{';
      for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
        if (j)
          out += ',';
        out += detail::element_name(names, blocks_[i][j]);
      }
      out += '}';
    }
    return out + "}";
  }

  friend bool operator==(const CrispPartition &, const CrispPartition &) = default;

private:
  std::vector<std::vector<std::uint32_t>> blocks_;
};

/// Compact fuzzy partition: a tree whose leaves are crisp blocks (degree 1)
/// and whose inner nodes are fuzzy blocks with degree < 1 and at least two
/// subblocks. The degree of a pair is the degree of the lowest common
/// ancestor of the leaves holding them.
///
/// Nodes are stored in canonical preorder (children sorted by least element,
/// node 0 is the root), so structural equality is plain vector equality.
class CompactFuzzyPartition {
public:
  struct Node {
    Degree degree;
    std::int32_t parent = -1;
    std::vector<std::uint32_t> children;
    std::vector<std::uint32_t> elements; // crisp blocks only

    bool is_crisp() const { return children.empty(); }
    friend bool operator==(const Node &, const Node &) = default;
  };

  CompactFuzzyPartition() = default;

  static CompactFuzzyPartition crisp_block(std::vector<std::uint32_t> elements) {
    Node n;
    n.degree = Degree::one();
    n.elements = std::move(elements);
    return CompactFuzzyPartition(std::vector<Node>{std::move(n)});
  }

  static CompactFuzzyPartition fuzzy_block(Degree degree,
                                           std::vector<CompactFuzzyPartition> subblocks) {
    std::vector<Node> nodes(1);
    nodes[0].degree = degree;
    for (auto &sub : subblocks) {
      const auto offset = static_cast<std::uint32_t>(nodes.size());
      nodes[0].children.push_back(offset);
      for (const Node &src : sub.nodes_) {
        Node n = src;
        n.parent = n.parent < 0 ? 0 : n.parent + static_cast<std::int32_t>(offset);
        for (auto &c : n.children)
          c += offset;
        nodes.push_back(std::move(n));
      }
    }
    return CompactFuzzyPartition(std::move(nodes));
  }

  /// Canonicalizes, validates and indexes a tree rooted at nodes[0]; parent
  /// fields are recomputed from the child lists.
  explicit CompactFuzzyPartition(std::vector<Node> nodes) {
    if (nodes.empty())
      throw PartitionError("compact fuzzy partition has no nodes");
    std::vector<std::uint32_t> least(nodes.size(), UINT32_MAX);
    std::vector<char> seen(nodes.size(), 0);
    // post-order pass computing the least element of each subtree
    std::function<std::uint32_t(std::uint32_t)> min_of = [&](std::uint32_t v) {
      if (seen[v])
        throw PartitionError("compact fuzzy partition is not a tree");
      seen[v] = 1;
      Node &n = nodes[v];
      std::uint32_t best = UINT32_MAX;
      if (n.is_crisp()) {
        std::sort(n.elements.begin(), n.elements.end());
        if (!n.elements.empty())
          best = n.elements.front();
      } else {
        for (auto c : n.children) {
          if (c >= nodes.size())
            throw PartitionError("child index out of range");
          best = std::min(best, min_of(c));
        }
      }
      return least[v] = best;
    };
    min_of(0);

    // re-emit in preorder with sorted children
    nodes_.reserve(nodes.size());
    std::function<void(std::uint32_t, std::int32_t)> emit = [&](std::uint32_t v,
                                                                std::int32_t parent) {
      Node n = nodes[v];
      n.parent = parent;
      std::sort(n.children.begin(), n.children.end(),
                [&](auto a, auto b) { return least[a] < least[b]; });
      const auto self = static_cast<std::int32_t>(nodes_.size());
      auto kids = std::move(n.children);
      n.children.clear();
      nodes_.push_back(std::move(n));
      for (auto c : kids) {
        nodes_[static_cast<std::size_t>(self)].children.push_back(
            static_cast<std::uint32_t>(nodes_.size()));
        emit(c, self);
      }
    };
    emit(0, -1);
    validate();
    index();
  }

  const std::vector<Node> &nodes() const { return nodes_; }
  const Node &root() const { return nodes_.front(); }
  bool is_crisp() const { return nodes_.size() == 1; }

  /// Sorted list of all elements.
  const std::vector<std::uint32_t> &elements() const { return elements_; }
  std::size_t universe_size() const { return elements_.size(); }
  bool contains(std::uint32_t x) const {
    return x < leaf_of_.size() && leaf_of_[x] != UINT32_MAX;
  }

  std::uint32_t leaf_of(std::uint32_t x) const {
    if (!contains(x))
      throw PartitionError("element " + std::to_string(x) + " is not in the partition");
    return leaf_of_[x];
  }

  /// Degree of (x, y): the degree of the LCA block of their leaves.
  Degree degree(std::uint32_t x, std::uint32_t y) const {
    return nodes_[lca_.lca(leaf_of(x), leaf_of(y))].degree;
  }

  std::uint32_t any_element(std::uint32_t node = 0) const {
    while (!nodes_[node].is_crisp())
      node = nodes_[node].children.front();
    return nodes_[node].elements.front();
  }

  std::vector<std::uint32_t> all_elements(std::uint32_t node = 0) const {
    std::vector<std::uint32_t> out;
    std::vector<std::uint32_t> stack{node};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      const Node &n = nodes_[v];
      out.insert(out.end(), n.elements.begin(), n.elements.end());
      stack.insert(stack.end(), n.children.begin(), n.children.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The subtree rooted at `node` as a partition of its own.
  CompactFuzzyPartition subtree(std::uint32_t node) const {
    std::vector<Node> out;
    std::vector<std::pair<std::uint32_t, std::int32_t>> stack{{node, -1}};
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      const auto self = static_cast<std::uint32_t>(out.size());
      Node n = nodes_[v];
      n.parent = parent;
      n.children.clear();
      out.push_back(std::move(n));
      if (parent >= 0)
        out[static_cast<std::size_t>(parent)].children.push_back(self);
      for (auto c : nodes_[v].children)
        stack.emplace_back(c, static_cast<std::int32_t>(self));
    }
    return CompactFuzzyPartition(std::move(out));
  }

  std::vector<CompactFuzzyPartition> subblocks(std::uint32_t node = 0) const {
    std::vector<CompactFuzzyPartition> out;
    for (auto c : nodes_[node].children)
      out.push_back(subtree(c));
    return out;
  }

  /// Brace notation, e.g. {{{s1}:1,{s2,s5}:1}:0.4,{s3,s4}:1}:0.
  std::string to_text(const std::vector<std::string> *names = nullptr) const {
    std::string out;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t v) {
      const Node &n = nodes_[v];
      out += '{';
      if (n.is_crisp()) {
        for (std::size_t i = 0; i < n.elements.size(); ++i) {
          if (i)
            out += ',';
          out += detail::element_name(names, n.elements[i]);
        }
      } else {
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (i)
            out += ',';
          rec(n.children[i]);
        }
      }
      out += "}:";
      out += n.degree.to_string();
    };
    rec(0);
    return out;
  }

  friend bool operator==(const CompactFuzzyPartition &a, const CompactFuzzyPartition &b) {
    return a.nodes_ == b.nodes_;
  }

private:
  void validate() const {
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      const Node &n = nodes_[v];
      if (n.is_crisp()) {
        if (!n.degree.is_one())
          throw PartitionError("crisp block with degree " + n.degree.to_string());
        if (n.elements.empty())
          throw PartitionError("crisp block without elements");
      } else {
        if (!n.elements.empty())
          throw PartitionError("fuzzy block holding elements directly");
        if (n.degree.is_one())
          throw PartitionError("fuzzy block with degree 1");
        if (n.children.size() < 2)
          throw PartitionError("fuzzy block with fewer than two subblocks");
      }
      if (n.parent >= 0 && nodes_[static_cast<std::size_t>(n.parent)].degree >= n.degree)
        throw PartitionError("degrees do not increase towards the leaves");
    }
  }

  void index() {
    std::vector<std::vector<std::uint32_t>> children(nodes_.size());
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      children[v] = nodes_[v].children;
      for (auto x : nodes_[v].elements) {
        if (x >= leaf_of_.size())
          leaf_of_.resize(x + 1, UINT32_MAX);
        if (leaf_of_[x] != UINT32_MAX)
          throw PartitionError("element " + std::to_string(x) + " occurs twice");
        leaf_of_[x] = static_cast<std::uint32_t>(v);
        elements_.push_back(x);
      }
    }
    std::sort(elements_.begin(), elements_.end());
    lca_ = EulerTourLca(children, 0);
  }

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> elements_;
  std::vector<std::uint32_t> leaf_of_;
  EulerTourLca lca_;
};

/// Builds the compact fuzzy partition of a fuzzy equivalence relation on
/// {0..n-1}. Throws PartitionError naming the first violated law.
inline CompactFuzzyPartition cfp_from_relation(const FuzzyRelation &r) {
  if (r.rows() != r.cols())
    throw PartitionError("relation is not on a single universe");
  if (r.rows() == 0)
    throw PartitionError("empty universe");
  LawReport laws = relation_laws(r);
  if (!laws.reflexive)
    throw PartitionError("not a fuzzy equivalence: reflexivity fails at " +
                         std::to_string(*laws.reflexive_witness));
  if (!laws.symmetric)
    throw PartitionError("not a fuzzy equivalence: symmetry fails");
  if (!laws.transitive)
    throw PartitionError("not a fuzzy equivalence: transitivity fails");

  std::vector<CompactFuzzyPartition::Node> nodes;
  std::function<std::uint32_t(const std::vector<std::uint32_t> &)> build =
      [&](const std::vector<std::uint32_t> &xs) -> std::uint32_t {
    const auto self = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();
    Degree d = Degree::one();
    for (auto x : xs)
      for (auto y : xs)
        d = std::min(d, r(x, y));
    if (d.is_one()) {
      nodes[self].degree = d;
      nodes[self].elements = xs;
      return self;
    }
    nodes[self].degree = d;
    // x ~ y iff r(x,y) > d; an equivalence because r is min-transitive
    std::vector<char> taken(xs.size(), 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (taken[i])
        continue;
      std::vector<std::uint32_t> cls;
      for (std::size_t j = i; j < xs.size(); ++j)
        if (!taken[j] && r(xs[i], xs[j]) > d) {
          taken[j] = 1;
          cls.push_back(xs[j]);
        }
      auto child = build(cls);
      nodes[self].children.push_back(child);
    }
    return self;
  };
  std::vector<std::uint32_t> all(r.rows());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = static_cast<std::uint32_t>(i);
  build(all);
  return CompactFuzzyPartition(std::move(nodes));
}

/// Pairwise degrees of a compact fuzzy partition over {0..n-1}, computed by
/// walking parent links (independent of the LCA index).
inline FuzzyRelation cfp_to_relation(const CompactFuzzyPartition &b) {
  const auto &elems = b.elements();
  const std::size_t n = elems.size();
  if (n == 0 || elems.back() + 1 != n)
    throw PartitionError("cfp_to_relation needs the universe {0..n-1}");
  const auto &nodes = b.nodes();
  std::vector<std::uint32_t> depth(nodes.size(), 0);
  for (std::size_t v = 1; v < nodes.size(); ++v)
    depth[v] = depth[static_cast<std::size_t>(nodes[v].parent)] + 1; // preorder: parent first
  FuzzyRelation r(n, n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x; y < n; ++y) {
      std::uint32_t u = b.leaf_of(x), v = b.leaf_of(y);
      while (u != v) {
        if (depth[u] >= depth[v])
          u = static_cast<std::uint32_t>(nodes[u].parent);
        else
          v = static_cast<std::uint32_t>(nodes[v].parent);
      }
      r.set(x, y, nodes[u].degree);
      r.set(y, x, nodes[u].degree);
    }
  return r;
}

/// Parses the brace notation produced by to_text(). `resolve` maps an element
/// name to its id.
inline CompactFuzzyPartition
parse_cfp(std::string_view text,
          const std::function<std::uint32_t(const std::string &)> &resolve) {
  std::size_t pos = 0;
  auto fail = [&](const std::string &why) -> void {
    throw PartitionError("cannot parse compact fuzzy partition at offset " +
                         std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto token = [&] {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '{' && text[pos] != '}' && text[pos] != ',' && text[pos] != ':')
      ++pos;
    if (start == pos)
      fail("expected a name or degree");
    return std::string(text.substr(start, pos - start));
  };

  std::vector<CompactFuzzyPartition::Node> nodes;
  std::function<std::uint32_t()> block = [&]() -> std::uint32_t {
    expect('{');
    const auto self = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();
    skip_ws();
    bool nested = pos < text.size() && text[pos] == '{';
    for (bool first = true;; first = false) {
      skip_ws();
      if (!first) {
        if (pos < text.size() && text[pos] == '}')
          break;
        expect(',');
      }
      if (nested) {
        auto child = block();
        nodes[self].children.push_back(child);
      } else {
        auto id = resolve(token());
        nodes[self].elements.push_back(id);
      }
    }
    expect('}');
    expect(':');
    nodes[self].degree = Degree::parse(token());
    return self;
  };
  block();
  skip_ws();
  if (pos != text.size())
    fail("trailing characters");
  return CompactFuzzyPartition(std::move(nodes));
}

} // namespace fuzzybisim
