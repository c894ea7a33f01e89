#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzybisim/crisp_engine.hpp"
#include "fuzzybisim/fuzzy_engine.hpp"
#include "fuzzybisim/model.hpp"

namespace fuzzybisim::bench {

inline constexpr const char *kRngName = "mt19937_64";

struct GenSpec {
  std::size_t states = 5;
  std::size_t actions = 2;
  std::size_t dists_min = 1, dists_max = 2;     // distributions per (state, action)
  std::size_t support_min = 1, support_max = 2; // states per distribution
  std::size_t l = 6;                            // l - 2 distinct degrees in (0,1)
  std::size_t labels = 0;                       // |Σ|
  double label_density = 0.0;                   // chance that L(s)(p) > 0
  std::uint64_t seed = 1;

  void validate() const {
    if (states == 0 || actions == 0)
      throw std::invalid_argument("generator needs at least one state and one action");
    if (dists_min > dists_max || support_min > support_max)
      throw std::invalid_argument("generator range has min > max");
    if (support_min == 0)
      throw std::invalid_argument("distributions need a non-empty support");
    if (support_max > states)
      throw std::invalid_argument("support size " + std::to_string(support_max) +
                                  " exceeds the state count " + std::to_string(states));
    if (l < 3)
      throw std::invalid_argument("l must be at least 3");
    if (l - 2 > 999999)
      throw std::invalid_argument("l is too large");
    if (label_density < 0.0 || label_density > 1.0)
      throw std::invalid_argument("label density must lie in [0,1]");
  }
};

namespace detail {

class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  // uniform-ish in [lo, hi]
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + rng_() % (hi - lo + 1); }
  bool chance(double p) { return static_cast<double>(rng_() % 1000000) < p * 1000000.0; }

private:
  std::mt19937_64 rng_;
};

inline std::vector<Degree> draw_pool(Draw &draw, std::size_t count) {
  // decimals with 3 digits while they suffice, 6 digits otherwise
  const std::uint64_t denom = count <= 500 ? 1000 : 1000000;
  std::set<std::uint64_t> picked;
  while (picked.size() < count)
    picked.insert(draw.range(1, denom - 1));
  std::vector<Degree> out;
  for (auto k : picked)
    out.push_back(Degree::from_units(k * (Degree::kScale / denom)));
  return out;
}

} // namespace detail

struct Generated {
  Nflts model;
  std::vector<Degree> pool; // the l - 2 values degrees were drawn from
};

inline Generated generate_with_pool(const GenSpec &spec) {
  spec.validate();
  detail::Draw draw(spec.seed);
  Generated out;
  out.pool = detail::draw_pool(draw, spec.l - 2);
  auto degree = [&] { return out.pool[draw.range(0, out.pool.size() - 1)]; };

  NftsBuilder b;
  for (std::size_t s = 0; s < spec.states; ++s)
    b.add_state("s" + std::to_string(s + 1));
  for (std::size_t a = 0; a < spec.actions; ++a)
    b.add_action(std::string(1, static_cast<char>('a' + a % 26)) +
                 (a >= 26 ? std::to_string(a / 26) : std::string{}));
  std::vector<StateId> scratch(spec.states);
  for (StateId s = 0; s < spec.states; ++s)
    for (ActionId a = 0; a < spec.actions; ++a) {
      const auto k = draw.range(spec.dists_min, spec.dists_max);
      for (std::size_t i = 0; i < k; ++i) {
        const auto size = draw.range(spec.support_min, spec.support_max);
        // partial Fisher-Yates for distinct targets
        for (StateId t = 0; t < spec.states; ++t)
          scratch[t] = t;
        std::vector<Distribution::Entry> entries;
        for (std::size_t j = 0; j < size; ++j) {
          std::swap(scratch[j], scratch[draw.range(j, spec.states - 1)]);
          entries.emplace_back(scratch[j], degree());
        }
        b.add_transition(s, a, Distribution(std::move(entries)));
      }
    }
  Nfts base = std::move(b).build();

  std::vector<std::string> label_names;
  for (std::size_t p = 0; p < spec.labels; ++p)
    label_names.push_back("p" + std::to_string(p + 1));
  std::vector<LabelSet> labels;
  for (std::size_t s = 0; s < spec.states; ++s) {
    std::vector<LabelSet::Entry> entries;
    for (LabelId p = 0; p < spec.labels; ++p)
      if (draw.chance(spec.label_density))
        entries.emplace_back(p, degree());
    labels.emplace_back(std::move(entries));
  }
  out.model = Nflts(std::move(base), std::move(label_names), std::move(labels));
  return out;
}

inline Nflts generate(const GenSpec &spec) { return generate_with_pool(spec).model; }

// ---------------------------------------------------------------------------

struct Metrics {
  std::size_t states = 0, actions = 0, delta = 0, dists = 0, size_delta = 0, l = 0, n = 0, m = 0;
};

/// l counts the distinct degrees in use plus 2 (for 0 and 1).
inline Metrics metrics(const Nflts &model) {
  const auto &b = model.base();
  Metrics out;
  out.states = b.state_count();
  out.actions = b.action_count();
  out.delta = b.transitions().size();
  out.dists = b.distributions().size();
  out.size_delta = b.size_of_delta();
  std::set<Degree> used;
  for (const auto &d : b.distributions())
    for (const auto &[s, v] : d)
      used.insert(v);
  for (const auto &set : model.labels())
    for (const auto &[p, v] : set)
      used.insert(v);
  used.erase(Degree::one());
  out.l = used.size() + 2;
  out.n = out.states + out.dists;
  out.m = out.size_delta;
  return out;
}

inline std::uint64_t fnv1a(const std::string &text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  static const char *digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4)
    out[static_cast<std::size_t>(i)] = digits[v & 15];
  return out;
}

enum class Mode { crisp, fuzzy };

struct BenchRecord {
  std::uint64_t seed = 0;
  Metrics metrics;
  std::string engine; // e.g. "crisp/efficient"
  double wall_time_ms = 0;
  std::string digest;
};

inline std::string csv_header() {
  return "seed,S,A,delta,delta_dists,size_delta,l,n,m,engine,wall_time_ms,digest,rng";
}

inline std::string csv_row(const BenchRecord &r) {
  const auto &m = r.metrics;
  char time[32];
  std::snprintf(time, sizeof time, "%.3f", r.wall_time_ms);
  return std::to_string(r.seed) + "," + std::to_string(m.states) + "," +
         std::to_string(m.actions) + "," + std::to_string(m.delta) + "," +
         std::to_string(m.dists) + "," + std::to_string(m.size_delta) + "," +
         std::to_string(m.l) + "," + std::to_string(m.n) + "," + std::to_string(m.m) + "," +
         r.engine + "," + time + "," + r.digest + "," + kRngName;
}

/// Runs one pipeline and returns (canonical output, milliseconds).
inline std::pair<std::string, double> timed_run(const Nflts &model, Mode mode, Strategy strategy) {
  EngineConfig cfg;
  cfg.strategy = strategy;
  const auto start = std::chrono::steady_clock::now();
  std::string text = mode == Mode::crisp ? crisp_partition_system(model, cfg).to_text()
                                         : fuzzy_partition_system(model, cfg).to_text();
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(text), std::chrono::duration<double, std::milli>(stop - start).count()};
}

struct ScalingOptions {
  Mode mode = Mode::crisp;
  std::size_t repetitions = 1;
  std::size_t oracle_max_m = 0; // the oracle runs only when m <= this
  bool efficient = true;
};

class DigestMismatch : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Times the pipelines on `base` with each state count in `sizes` (other
/// counts fixed, seed advanced per repetition). Throws DigestMismatch if the
/// engines disagree on an instance.
inline std::vector<BenchRecord> scaling_run(const GenSpec &base,
                                            const std::vector<std::size_t> &sizes,
                                            const ScalingOptions &opt) {
  const std::string prefix = opt.mode == Mode::crisp ? "crisp/" : "fuzzy/";
  std::vector<BenchRecord> out;
  for (auto size : sizes)
    for (std::size_t rep = 0; rep < opt.repetitions; ++rep) {
      GenSpec spec = base;
      spec.states = size;
      spec.seed = base.seed + rep;
      const Nflts model = generate(spec);
      const Metrics mt = metrics(model);
      std::string eff_digest;
      if (opt.efficient) {
        auto [text, ms] = timed_run(model, opt.mode, Strategy::efficient_refinement);
        eff_digest = hex(fnv1a(text));
        out.push_back({spec.seed, mt, prefix + "efficient", ms, eff_digest});
      }
      if (mt.m <= opt.oracle_max_m) {
        auto [text, ms] = timed_run(model, opt.mode, Strategy::baseline_fixpoint);
        auto digest = hex(fnv1a(text));
        if (opt.efficient && digest != eff_digest)
          throw DigestMismatch("engines disagree on seed " + std::to_string(spec.seed) +
                               " with " + std::to_string(size) + " states");
        out.push_back({spec.seed, mt, prefix + "oracle", ms, digest});
      }
    }
  return out;
}

/// Least-squares slope of log(time) against log(m) over the records of one
/// engine. NaN with fewer than two distinct sizes.
inline double loglog_slope(const std::vector<BenchRecord> &records, const std::string &engine) {
  std::vector<std::pair<double, double>> pts;
  for (const auto &r : records)
    if (r.engine == engine && r.metrics.m > 0)
      pts.emplace_back(std::log(static_cast<double>(r.metrics.m)),
                       std::log(std::max(r.wall_time_ms, 1e-3)));
  if (pts.size() < 2)
    return std::nan("");
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx == 0 ? std::nan("") : sxy / sxx;
}

/// The family used for scaling runs: 2 actions, 3 distributions per
/// (state, action), supports of 4 states, so m grows as 30·|S|.
inline GenSpec scaling_family(std::uint64_t seed = 1, std::size_t l = 12) {
  GenSpec s;
  s.actions = 2;
  s.dists_min = s.dists_max = 3;
  s.support_min = s.support_max = 4;
  s.l = l;
  s.seed = seed;
  return s;
}

} // namespace fuzzybisim::bench
