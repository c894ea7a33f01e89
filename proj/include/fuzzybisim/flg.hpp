#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuzzybisim/model.hpp"

namespace fuzzybisim {

/// Vertex label "being a state" and the empty action ε. Both names are
/// reserved in model alphabets.
inline constexpr const char *kStateLabel = "@state";
inline constexpr const char *kEpsilon = "@eps";

class AlphabetMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FlgEdge {
  std::uint32_t src;
  std::uint32_t label;
  std::uint32_t dst;
  Degree degree;

  friend auto operator<=>(const FlgEdge &, const FlgEdge &) = default;
};

enum class VertexKind { state, distribution };

struct VertexId {
  VertexKind kind;
  std::uint32_t index;

  friend bool operator==(const VertexId &, const VertexId &) = default;
};

/// Fuzzy labeled graph ⟨V, E, L, Σ_V, Σ_E⟩ with V = {0..n-1}. Edges are kept
/// sorted by (src, label, dst), which makes out-edges of a vertex contiguous;
/// an index by destination gives the in-edges.
class Flg {
public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Flg() = default;

  /// `state_vertices` is the number of leading vertices that stand for states
  /// when the graph comes from a transition system; npos means all of them.
  Flg(std::vector<std::string> vertex_names, std::vector<std::string> vertex_label_names,
      std::vector<std::string> edge_label_names, std::vector<LabelSet> vertex_labels,
      std::vector<FlgEdge> edges, std::size_t state_vertices = npos)
      : vertex_names_(std::move(vertex_names)),
        vertex_label_names_(std::move(vertex_label_names)),
        edge_label_names_(std::move(edge_label_names)),
        vertex_labels_(std::move(vertex_labels)), edges_(std::move(edges)) {
    const std::size_t n = vertex_names_.size();
    state_vertices_ = state_vertices == npos ? n : state_vertices;
    if (state_vertices_ > n)
      throw std::invalid_argument("more state vertices than vertices");
    if (vertex_labels_.size() != n)
      throw std::invalid_argument("vertex label table does not match the vertex count");
    for (const auto &set : vertex_labels_)
      for (const auto &[p, d] : set)
        if (p >= vertex_label_names_.size())
          throw std::invalid_argument("vertex label id out of range");
    std::erase_if(edges_, [](const FlgEdge &e) { return e.degree.is_zero(); });
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto &e = edges_[i];
      if (e.src >= n || e.dst >= n || e.label >= edge_label_names_.size())
        throw std::invalid_argument("edge refers to an unknown vertex or edge label");
      if (i > 0 && edges_[i - 1].src == e.src && edges_[i - 1].label == e.label &&
          edges_[i - 1].dst == e.dst)
        throw std::invalid_argument("edge listed twice");
    }
    out_offset_.assign(n + 1, 0);
    for (const auto &e : edges_)
      ++out_offset_[e.src + 1];
    for (std::size_t v = 0; v < n; ++v)
      out_offset_[v + 1] += out_offset_[v];
    std::vector<std::uint32_t> in_count(n + 1, 0);
    for (const auto &e : edges_)
      ++in_count[e.dst + 1];
    for (std::size_t v = 0; v < n; ++v)
      in_count[v + 1] += in_count[v];
    in_offset_ = in_count;
    in_edges_.resize(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i)
      in_edges_[in_count[edges_[i].dst]++] = static_cast<std::uint32_t>(i);
  }

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t state_vertex_count() const { return state_vertices_; }
  const std::vector<std::string> &vertex_names() const { return vertex_names_; }
  const std::vector<std::string> &vertex_label_names() const { return vertex_label_names_; }
  const std::vector<std::string> &edge_label_names() const { return edge_label_names_; }
  const std::vector<LabelSet> &vertex_labels() const { return vertex_labels_; }
  const LabelSet &label(std::uint32_t v) const { return vertex_labels_[v]; }
  const std::vector<FlgEdge> &edges() const { return edges_; }

  std::span<const FlgEdge> out_edges(std::uint32_t v) const {
    return std::span<const FlgEdge>(edges_.data() + out_offset_[v],
                                    out_offset_[v + 1] - out_offset_[v]);
  }

  /// Indices into edges() of the edges entering v.
  std::span<const std::uint32_t> in_edges(std::uint32_t v) const {
    return std::span<const std::uint32_t>(in_edges_.data() + in_offset_[v],
                                          in_offset_[v + 1] - in_offset_[v]);
  }

  Degree edge_degree(std::uint32_t x, std::uint32_t r, std::uint32_t y) const {
    auto out = out_edges(x);
    auto it = std::lower_bound(out.begin(), out.end(), FlgEdge{x, r, y, Degree::zero()});
    if (it != out.end() && it->label == r && it->dst == y)
      return it->degree;
    return Degree::zero();
  }

  VertexId vertex_id(std::uint32_t v) const {
    if (v < state_vertices_)
      return {VertexKind::state, v};
    return {VertexKind::distribution, static_cast<std::uint32_t>(v - state_vertices_)};
  }

  /// Distinct degrees occurring on edges and vertex labels.
  std::vector<Degree> degrees_used() const {
    std::vector<Degree> out;
    for (const auto &e : edges_)
      out.push_back(e.degree);
    for (const auto &set : vertex_labels_)
      for (const auto &[p, d] : set)
        out.push_back(d);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> vertex_label_names_;
  std::vector<std::string> edge_label_names_;
  std::vector<LabelSet> vertex_labels_;
  std::vector<FlgEdge> edges_;
  std::size_t state_vertices_ = 0;
  std::vector<std::uint32_t> out_offset_;
  std::vector<std::uint32_t> in_offset_;
  std::vector<std::uint32_t> in_edges_;
};

/// The FLG corresponding to an NFLTS: V = S ∪ δ◦ (states first, then
/// distributions by canonical id), Σ_V = Σ ∪ {@state}, Σ_E = A ∪ {@eps},
/// E(s,a,µ) = 1 for ⟨s,a,µ⟩ ∈ δ and E(µ,@eps,t) = µ(t).
inline Flg nflts_to_flg(const Nflts &m) {
  const Nfts &base = m.base();
  for (const auto &name : m.label_names())
    if (name == kStateLabel)
      throw ModelError(std::string("label name \"") + kStateLabel + "\" is reserved");
  for (const auto &name : base.action_names())
    if (name == kEpsilon)
      throw ModelError(std::string("action name \"") + kEpsilon + "\" is reserved");

  const std::size_t ns = base.state_count();
  const std::size_t nd = base.distributions().size();
  const auto state_label = static_cast<LabelId>(m.label_names().size());
  const auto eps = static_cast<std::uint32_t>(base.action_count());

  std::vector<std::string> names = base.state_names();
  names.insert(names.end(), base.distribution_names().begin(),
               base.distribution_names().end());
  std::vector<std::string> vlabels = m.label_names();
  vlabels.emplace_back(kStateLabel);
  std::vector<std::string> elabels = base.action_names();
  elabels.emplace_back(kEpsilon);

  std::vector<LabelSet> vertex_labels;
  vertex_labels.reserve(ns + nd);
  for (std::size_t s = 0; s < ns; ++s) {
    auto entries = m.label(static_cast<StateId>(s)).entries();
    entries.emplace_back(state_label, Degree::one());
    vertex_labels.emplace_back(std::move(entries));
  }
  vertex_labels.resize(ns + nd);

  std::vector<FlgEdge> edges;
  edges.reserve(base.size_of_delta());
  for (const auto &t : base.transitions())
    edges.push_back({t.from, t.action, static_cast<std::uint32_t>(ns + t.dist), Degree::one()});
  for (std::size_t k = 0; k < nd; ++k)
    for (const auto &[t, d] : base.distributions()[k])
      edges.push_back({static_cast<std::uint32_t>(ns + k), eps, t, d});

  return Flg(std::move(names), std::move(vlabels), std::move(elabels),
             std::move(vertex_labels), std::move(edges), ns);
}

inline Flg nfts_to_flg(const Nfts &m) { return nflts_to_flg(Nflts(m)); }

namespace detail {

inline std::vector<std::uint32_t> alphabet_map(const std::vector<std::string> &from,
                                               const std::vector<std::string> &to,
                                               const char *what) {
  auto sorted_from = from, sorted_to = to;
  std::sort(sorted_from.begin(), sorted_from.end());
  std::sort(sorted_to.begin(), sorted_to.end());
  if (sorted_from != sorted_to)
    throw AlphabetMismatch(std::string(what) + " alphabets differ");
  std::vector<std::uint32_t> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    map[i] = static_cast<std::uint32_t>(std::find(to.begin(), to.end(), from[i]) - to.begin());
  return map;
}

} // namespace detail

/// Re-indexes `g` so that its alphabets use the order of `reference`.
/// Throws AlphabetMismatch unless both alphabets agree as sets.
inline Flg align_flg(const Flg &g, const Flg &reference) {
  auto vmap = detail::alphabet_map(g.vertex_label_names(), reference.vertex_label_names(),
                                   "vertex label");
  auto emap = detail::alphabet_map(g.edge_label_names(), reference.edge_label_names(),
                                   "edge label");
  std::vector<LabelSet> labels;
  for (const auto &set : g.vertex_labels()) {
    std::vector<LabelSet::Entry> entries;
    for (const auto &[p, d] : set)
      entries.emplace_back(vmap[p], d);
    labels.emplace_back(std::move(entries));
  }
  std::vector<FlgEdge> edges;
  for (const auto &e : g.edges())
    edges.push_back({e.src, emap[e.label], e.dst, e.degree});
  return Flg(g.vertex_names(), reference.vertex_label_names(), reference.edge_label_names(),
             std::move(labels), std::move(edges), g.state_vertex_count());
}

/// Re-indexes `m` onto the given action and label alphabets.
inline Nflts align_nflts(const Nflts &m, const std::vector<std::string> &actions,
                         const std::vector<std::string> &labels) {
  auto amap = detail::alphabet_map(m.base().action_names(), actions, "action");
  auto lmap = detail::alphabet_map(m.label_names(), labels, "state label");
  NftsBuilder b;
  for (const auto &s : m.base().state_names())
    b.add_state(s);
  for (const auto &a : actions)
    b.add_action(a);
  const auto &dists = m.base().distributions();
  for (std::size_t k = 0; k < dists.size(); ++k)
    b.intern_distribution(dists[k], m.base().distribution_names()[k]);
  for (const auto &t : m.base().transitions())
    b.add_transition(t.from, amap[t.action], t.dist);
  std::vector<LabelSet> state_labels;
  for (const auto &set : m.labels()) {
    std::vector<LabelSet::Entry> entries;
    for (const auto &[p, d] : set)
      entries.emplace_back(lmap[p], d);
    state_labels.emplace_back(std::move(entries));
  }
  return Nflts(std::move(b).build(), labels, std::move(state_labels));
}

struct DisjointUnion {
  Nflts model;
  std::vector<StateId> left;  // injection of the first system's states
  std::vector<StateId> right; // injection of the second system's states
};

/// Tagged union of two NFLTSs over the same action and label alphabets.
/// States are renamed "1:<name>" and "2:<name>".
inline DisjointUnion disjoint_union(const Nflts &a, const Nflts &b_in) {
  const Nflts b = align_nflts(b_in, a.base().action_names(), a.label_names());
  NftsBuilder builder;
  DisjointUnion out;
  for (const auto &s : a.base().state_names())
    out.left.push_back(builder.add_state("1:" + s));
  for (const auto &s : b.base().state_names())
    out.right.push_back(builder.add_state("2:" + s));
  for (const auto &act : a.base().action_names())
    builder.add_action(act);

  auto copy_side = [&](const Nflts &m, const std::vector<StateId> &inj, const char *tag) {
    std::vector<DistId> dist_map;
    const auto &dists = m.base().distributions();
    for (std::size_t k = 0; k < dists.size(); ++k) {
      std::vector<Distribution::Entry> entries;
      for (const auto &[t, d] : dists[k])
        entries.emplace_back(inj[t], d);
      dist_map.push_back(builder.intern_distribution(
          Distribution(std::move(entries)), tag + m.base().distribution_names()[k]));
    }
    for (const auto &t : m.base().transitions())
      builder.add_transition(inj[t.from], t.action, dist_map[t.dist]);
  };
  copy_side(a, out.left, "1:");
  copy_side(b, out.right, "2:");

  std::vector<LabelSet> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  out.model = Nflts(std::move(builder).build(), a.label_names(), std::move(labels));
  return out;
}

} // namespace fuzzybisim
