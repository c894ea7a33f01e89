#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fuzzybisim/model.hpp"
#include "fuzzybisim/partition.hpp"
#include "fuzzybisim/relation.hpp"

namespace fuzzybisim::io {

inline constexpr const char *kFormatVersion = "1";

namespace detail {

using Json = nlohmann::ordered_json;

// Collects a model from either document format; names are resolved late so
// that both formats report errors the same way.
class ModelAssembler {
public:
  explicit ModelAssembler(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string &where, const std::string &what) const {
    throw ModelError(origin_ + (where.empty() ? "" : ": " + where) + ": " + what);
  }

  Degree degree(const std::string &where, const std::string &text) const {
    try {
      return Degree::parse(text);
    } catch (const DegreeError &e) {
      fail(where, e.what());
    }
  }

  void states(const std::string &where, const std::vector<std::string> &names) {
    for (const auto &s : names)
      guard(where, [&] { builder_.add_state(s); });
    have_states_ = true;
  }

  void actions(const std::string &where, const std::vector<std::string> &names) {
    if (!have_states_)
      fail(where, "states must be declared before actions");
    for (const auto &a : names)
      guard(where, [&] { builder_.add_action(a); });
    have_actions_ = true;
  }

  void labels(const std::string &where, const std::vector<std::string> &names) {
    for (const auto &p : names) {
      if (p.empty())
        fail(where, "label name must not be empty");
      if (label_index_.count(p))
        fail(where, "duplicate label \"" + p + "\"");
      label_index_.emplace(p, static_cast<LabelId>(label_names_.size()));
      label_names_.push_back(p);
    }
  }

  Distribution distribution(const std::string &where,
                            const std::vector<std::pair<std::string, std::string>> &entries) {
    need_header(where);
    std::vector<Distribution::Entry> out;
    for (const auto &[s, d] : entries) {
      auto id = builder_.find_state(s);
      if (!id)
        fail(where + "." + s, "unknown state \"" + s + "\"");
      out.emplace_back(*id, degree(where + "." + s, d));
    }
    try {
      return Distribution(std::move(out));
    } catch (const std::invalid_argument &) {
      fail(where, "state listed twice");
    }
  }

  void named_distribution(const std::string &where, const std::string &name, Distribution mu) {
    if (name.empty())
      fail(where, "distribution name must not be empty");
    if (named_.count(name))
      fail(where, "duplicate distribution \"" + name + "\"");
    named_.emplace(name, builder_.intern_distribution(mu, name));
    declared_order_.push_back(name);
  }

  void transition(const std::string &where, const std::string &from, const std::string &action,
                  const std::variant<std::string, Distribution> &to) {
    need_header(where);
    auto s = builder_.find_state(from);
    if (!s)
      fail(where + ".from", "unknown state \"" + from + "\"");
    auto a = builder_.find_action(action);
    if (!a)
      fail(where + ".action", "unknown action \"" + action + "\"");
    DistId d;
    if (auto *name = std::get_if<std::string>(&to)) {
      auto it = named_.find(*name);
      if (it == named_.end())
        fail(where + ".to", "unknown distribution \"" + *name + "\"");
      d = it->second;
    } else {
      d = builder_.intern_distribution(std::get<Distribution>(to));
    }
    used_.insert(d);
    builder_.add_transition(*s, *a, d);
  }

  void state_label(const std::string &where, const std::string &state,
                   const std::vector<std::pair<std::string, std::string>> &entries) {
    need_header(where);
    auto s = builder_.find_state(state);
    if (!s)
      fail(where, "unknown state \"" + state + "\"");
    if (labelled_.count(*s))
      fail(where, "state \"" + state + "\" labelled twice");
    std::vector<LabelSet::Entry> out;
    for (const auto &[p, d] : entries) {
      auto it = label_index_.find(p);
      if (it == label_index_.end())
        fail(where + "." + p, "unknown label \"" + p + "\"");
      out.emplace_back(it->second, degree(where + "." + p, d));
    }
    try {
      labelled_.emplace(*s, LabelSet(std::move(out)));
    } catch (const std::invalid_argument &) {
      fail(where, "label listed twice");
    }
  }

  Nflts finish() && {
    if (!have_states_)
      fail("", "missing states");
    if (!have_actions_)
      fail("", "missing actions");
    for (const auto &name : declared_order_)
      if (!used_.count(named_.at(name)))
        fail("distributions." + name, "distribution is not used by any transition");
    Nfts base = guard_value("", [&] { return std::move(builder_).build(); });
    std::vector<LabelSet> labels(base.state_count());
    for (auto &[s, set] : labelled_)
      labels[s] = std::move(set);
    return guard_value("", [&] {
      return Nflts(std::move(base), std::move(label_names_), std::move(labels));
    });
  }

private:
  void need_header(const std::string &where) const {
    if (!have_states_ || !have_actions_)
      fail(where, "states and actions must be declared first");
  }

  template <typename F> void guard(const std::string &where, F &&f) {
    try {
      f();
    } catch (const ModelError &e) {
      fail(where, e.what());
    }
  }
  template <typename F> auto guard_value(const std::string &where, F &&f) -> decltype(f()) {
    try {
      return f();
    } catch (const ModelError &e) {
      fail(where, e.what());
    }
  }

  std::string origin_;
  NftsBuilder builder_;
  bool have_states_ = false, have_actions_ = false;
  std::vector<std::string> label_names_;
  std::map<std::string, LabelId> label_index_;
  std::map<std::string, DistId> named_;
  std::vector<std::string> declared_order_;
  std::set<DistId> used_;
  std::map<StateId, LabelSet> labelled_;
};

inline std::vector<std::string> string_list(const ModelAssembler &as, const Json &j,
                                            const std::string &where) {
  if (!j.is_array())
    as.fail(where, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      as.fail(where + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>>
degree_map(const ModelAssembler &as, const Json &j, const std::string &where) {
  if (!j.is_object())
    as.fail(where, "expected an object of name: \"degree\" pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &[k, v] : j.items()) {
    if (!v.is_string())
      as.fail(where + "." + k, "degrees must be decimal strings, e.g. \"0.5\"");
    out.emplace_back(k, v.get<std::string>());
  }
  return out;
}

} // namespace detail

/// Parses a JSON model document.
inline Nflts parse_model_json(const std::string &text, const std::string &origin = "<json>") {
  using detail::Json;
  detail::ModelAssembler as(origin);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error &e) {
    as.fail("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object())
    as.fail("", "model document must be a JSON object");
  static const std::set<std::string> known = {"format_version", "kind",          "states",
                                              "actions",        "labels",        "distributions",
                                              "transitions",    "state_labels"};
  for (const auto &[k, v] : doc.items())
    if (!known.count(k))
      as.fail(k, "unknown field");
  if (!doc.contains("format_version") || !doc["format_version"].is_string())
    as.fail("format_version", "missing or not a string");
  if (doc["format_version"] != kFormatVersion)
    as.fail("format_version", "unsupported version " + doc["format_version"].dump());
  if (!doc.contains("kind") || !doc["kind"].is_string())
    as.fail("kind", "missing or not a string");
  const std::string kind = doc["kind"];
  if (kind != "nfts" && kind != "nflts")
    as.fail("kind", "expected \"nfts\" or \"nflts\"");
  if (kind == "nfts" && (doc.contains("labels") || doc.contains("state_labels")))
    as.fail("kind", "an nfts document cannot carry labels");
  for (const char *f : {"states", "actions", "transitions"})
    if (!doc.contains(f))
      as.fail(f, "missing");

  as.states("states", detail::string_list(as, doc["states"], "states"));
  as.actions("actions", detail::string_list(as, doc["actions"], "actions"));
  if (doc.contains("labels"))
    as.labels("labels", detail::string_list(as, doc["labels"], "labels"));
  if (doc.contains("distributions")) {
    const auto &ds = doc["distributions"];
    if (!ds.is_object())
      as.fail("distributions", "expected an object");
    for (const auto &[name, body] : ds.items()) {
      const std::string where = "distributions." + name;
      as.named_distribution(where, name,
                            as.distribution(where, detail::degree_map(as, body, where)));
    }
  }
  const auto &ts = doc["transitions"];
  if (!ts.is_array())
    as.fail("transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    const auto &t = ts[i];
    if (!t.is_object())
      as.fail(where, "expected an object");
    for (const char *f : {"from", "action", "to"})
      if (!t.contains(f))
        as.fail(where + "." + f, "missing");
    if (!t["from"].is_string() || !t["action"].is_string())
      as.fail(where, "from and action must be strings");
    std::variant<std::string, Distribution> to;
    if (t["to"].is_string())
      to = t["to"].get<std::string>();
    else
      to = as.distribution(where + ".to", detail::degree_map(as, t["to"], where + ".to"));
    as.transition(where, t["from"], t["action"], to);
  }
  if (doc.contains("state_labels")) {
    const auto &ls = doc["state_labels"];
    if (!ls.is_object())
      as.fail("state_labels", "expected an object");
    for (const auto &[s, body] : ls.items()) {
      const std::string where = "state_labels." + s;
      as.state_label(where, s, detail::degree_map(as, body, where));
    }
  }
  return std::move(as).finish();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

inline std::vector<std::pair<std::string, std::string>>
colon_pairs(const ModelAssembler &as, const std::string &where,
            const std::vector<std::string> &words, std::size_t from) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = from; i < words.size(); ++i) {
    auto colon = words[i].rfind(':');
    if (colon == std::string::npos || colon == 0)
      as.fail(where, "expected name:degree, got \"" + words[i] + "\"");
    out.emplace_back(words[i].substr(0, colon), words[i].substr(colon + 1));
  }
  return out;
}

} // namespace detail

/// Parses the line-oriented text format:
///   kind nfts|nflts
///   states s1 s2 ...
///   actions a b ...
///   labels p q ...
///   dist mu1 s2:0.5 s3:0.8
///   trans s1 a mu1            (named distribution)
///   trans s1 a s2:0.5 s3:0.8  (inline distribution)
///   label s1 p:0.7
/// Blank lines and text after '#' are ignored.
inline Nflts parse_model_text(const std::string &text, const std::string &origin = "<text>") {
  detail::ModelAssembler as(origin);
  std::istringstream in(text);
  std::string line;
  std::optional<std::string> kind;
  bool saw_labels = false;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    auto w = detail::split_ws(line);
    if (w.empty())
      continue;
    const std::string where = "line " + std::to_string(no);
    const std::string &key = w[0];
    if (key == "kind") {
      if (w.size() != 2 || (w[1] != "nfts" && w[1] != "nflts"))
        as.fail(where, "expected \"kind nfts\" or \"kind nflts\"");
      kind = w[1];
    } else if (key == "states") {
      as.states(where, {w.begin() + 1, w.end()});
    } else if (key == "actions") {
      as.actions(where, {w.begin() + 1, w.end()});
    } else if (key == "labels") {
      as.labels(where, {w.begin() + 1, w.end()});
      saw_labels = true;
    } else if (key == "dist") {
      if (w.size() < 2)
        as.fail(where, "expected \"dist NAME state:degree ...\"");
      as.named_distribution(where, w[1], as.distribution(where, detail::colon_pairs(as, where, w, 2)));
    } else if (key == "trans") {
      if (w.size() < 3)
        as.fail(where, "expected \"trans FROM ACTION TARGET\"");
      std::variant<std::string, Distribution> to;
      if (w.size() == 4 && w[3].find(':') == std::string::npos)
        to = w[3];
      else
        to = as.distribution(where, detail::colon_pairs(as, where, w, 3));
      as.transition(where, w[1], w[2], to);
    } else if (key == "label") {
      if (w.size() < 2)
        as.fail(where, "expected \"label STATE name:degree ...\"");
      as.state_label(where, w[1], detail::colon_pairs(as, where, w, 2));
      saw_labels = true;
    } else {
      as.fail(where, "unknown directive \"" + key + "\"");
    }
  }
  if (kind == "nfts" && saw_labels)
    as.fail("kind", "an nfts document cannot carry labels");
  return std::move(as).finish();
}

inline bool looks_like_json(const std::string &text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

inline Nflts parse_model(const std::string &text, const std::string &origin = "<input>") {
  return looks_like_json(text) ? parse_model_json(text, origin) : parse_model_text(text, origin);
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ModelError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Nflts load_model(const std::string &path) { return parse_model(read_file(path), path); }

// ---------------------------------------------------------------------------
// Serialization

/// JSON document for `m`. Distributions are listed by name in canonical id
/// order so that parsing the result gives back an equal model.
inline std::string to_json(const Nflts &m) {
  using detail::Json;
  const Nfts &b = m.base();
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = m.label_names().empty() ? "nfts" : "nflts";
  doc["states"] = b.state_names();
  doc["actions"] = b.action_names();
  if (!m.label_names().empty())
    doc["labels"] = m.label_names();
  Json dists = Json::object();
  for (std::size_t k = 0; k < b.distributions().size(); ++k) {
    Json body = Json::object();
    for (const auto &[s, d] : b.distributions()[k])
      body[b.state_names()[s]] = d.to_string();
    dists[b.distribution_names()[k]] = std::move(body);
  }
  doc["distributions"] = std::move(dists);
  Json ts = Json::array();
  for (const auto &t : b.transitions())
    ts.push_back({{"from", b.state_names()[t.from]},
                  {"action", b.action_names()[t.action]},
                  {"to", b.distribution_names()[t.dist]}});
  doc["transitions"] = std::move(ts);
  if (!m.label_names().empty()) {
    Json ls = Json::object();
    for (StateId s = 0; s < b.state_count(); ++s) {
      if (m.label(s).support_size() == 0)
        continue;
      Json body = Json::object();
      for (const auto &[p, d] : m.label(s))
        body[m.label_names()[p]] = d.to_string();
      ls[b.state_names()[s]] = std::move(body);
    }
    doc["state_labels"] = std::move(ls);
  }
  return doc.dump(2) + "\n";
}

inline std::string to_text(const Nflts &m) {
  const Nfts &b = m.base();
  std::ostringstream out;
  out << "kind " << (m.label_names().empty() ? "nfts" : "nflts") << "\n";
  out << "states";
  for (const auto &s : b.state_names())
    out << ' ' << s;
  out << "\nactions";
  for (const auto &a : b.action_names())
    out << ' ' << a;
  out << "\n";
  if (!m.label_names().empty()) {
    out << "labels";
    for (const auto &p : m.label_names())
      out << ' ' << p;
    out << "\n";
  }
  for (std::size_t k = 0; k < b.distributions().size(); ++k) {
    out << "dist " << b.distribution_names()[k];
    for (const auto &[s, d] : b.distributions()[k])
      out << ' ' << b.state_names()[s] << ':' << d.to_string();
    out << "\n";
  }
  for (const auto &t : b.transitions())
    out << "trans " << b.state_names()[t.from] << ' ' << b.action_names()[t.action] << ' '
        << b.distribution_names()[t.dist] << "\n";
  for (StateId s = 0; s < b.state_count(); ++s) {
    if (m.label(s).support_size() == 0)
      continue;
    out << "label " << b.state_names()[s];
    for (const auto &[p, d] : m.label(s))
      out << ' ' << m.label_names()[p] << ':' << d.to_string();
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Relations

/// "x y" per related pair.
inline std::string crisp_relation_text(const CrispRelation &r, const std::vector<std::string> &rows,
                                       const std::vector<std::string> &cols) {
  std::string out;
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      if (r.contains(x, y))
        out += rows[x] + " " + cols[y] + "\n";
  return out;
}

/// "x y d" per pair with positive degree.
inline std::string fuzzy_relation_text(const FuzzyRelation &r, const std::vector<std::string> &rows,
                                       const std::vector<std::string> &cols) {
  std::string out;
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      if (!r(x, y).is_zero())
        out += rows[x] + " " + cols[y] + " " + r(x, y).to_string() + "\n";
  return out;
}

/// Reads a relation file over the states of `m`: lines "x y" (degree 1) or
/// "x y d". Pairs not listed have degree 0.
inline FuzzyRelation parse_relation(const std::string &text, const Nflts &m,
                                    const std::string &origin = "<relation>") {
  const Nfts &b = m.base();
  FuzzyRelation r(b.state_count(), b.state_count());
  std::istringstream in(text);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    auto w = detail::split_ws(line);
    if (w.empty())
      continue;
    const std::string where = origin + ": line " + std::to_string(no) + ": ";
    if (w.size() != 2 && w.size() != 3)
      throw ModelError(where + "expected \"x y\" or \"x y degree\"");
    auto x = b.find_state(w[0]);
    auto y = b.find_state(w[1]);
    if (!x || !y)
      throw ModelError(where + "unknown state \"" + (x ? w[1] : w[0]) + "\"");
    Degree d = Degree::one();
    if (w.size() == 3) {
      try {
        d = Degree::parse(w[2]);
      } catch (const DegreeError &e) {
        throw ModelError(where + e.what());
      }
    }
    r.set(*x, *y, d);
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON views of results

inline nlohmann::ordered_json partition_json(const CrispPartition &p,
                                             const std::vector<std::string> &names) {
  auto blocks = nlohmann::ordered_json::array();
  for (const auto &b : p.blocks()) {
    auto block = nlohmann::ordered_json::array();
    for (auto x : b)
      block.push_back(names[x]);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

inline nlohmann::ordered_json cfp_json(const CompactFuzzyPartition &c,
                                       const std::vector<std::string> &names,
                                       std::uint32_t node = 0) {
  const auto &n = c.nodes()[node];
  nlohmann::ordered_json out;
  out["degree"] = n.degree.to_string();
  if (n.is_crisp()) {
    auto elems = nlohmann::ordered_json::array();
    for (auto x : n.elements)
      elems.push_back(names[x]);
    out["elements"] = std::move(elems);
  } else {
    auto subs = nlohmann::ordered_json::array();
    for (auto k : n.children)
      subs.push_back(cfp_json(c, names, k));
    out["subblocks"] = std::move(subs);
  }
  return out;
}

} // namespace fuzzybisim::io
