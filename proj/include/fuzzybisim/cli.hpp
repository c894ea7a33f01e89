#pragma once

// In-process command-line front end: run(args, out, err) returns the exit
// code (0 success, 1 domain error or failed check, 2 usage error).

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fuzzybisim/bench.hpp"
#include "fuzzybisim/crisp_engine.hpp"
#include "fuzzybisim/fuzzy_engine.hpp"
#include "fuzzybisim/io.hpp"
#include "fuzzybisim/oracle.hpp"
#include "fuzzybisim/simulation.hpp"

namespace fuzzybisim::cli {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

using Json = nlohmann::ordered_json;

// What a subcommand produced: text for humans, JSON for --json.
struct Output {
  std::string text;
  Json json;
  int code = 0;
};

inline std::vector<std::size_t> parse_sizes(const std::string &text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(item, &used);
      if (used != item.size() || v == 0)
        throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception &) {
      throw UsageError("bad size list \"" + text + "\"");
    }
  }
  if (out.empty())
    throw UsageError("empty size list");
  return out;
}

inline StateId state_of(const Nflts &m, const std::string &name) {
  auto s = m.base().find_state(name);
  if (!s)
    throw ModelError("unknown state \"" + name + "\"");
  return *s;
}

inline Json crisp_pairs_json(const CrispRelation &r, const std::vector<std::string> &rows,
                             const std::vector<std::string> &cols) {
  Json out = Json::array();
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      if (r.contains(x, y))
        out.push_back({rows[x], cols[y]});
  return out;
}

inline Json fuzzy_pairs_json(const FuzzyRelation &r, const std::vector<std::string> &rows,
                             const std::vector<std::string> &cols) {
  Json out = Json::array();
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      if (!r(x, y).is_zero())
        out.push_back({rows[x], cols[y], r(x, y).to_string()});
  return out;
}

} // namespace detail

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  using detail::Json;
  using detail::Output;

  CLI::App app{"Greatest crisp and fuzzy bisimulations and simulations of fuzzy transition "
               "systems",
               "fbisim"};
  app.require_subcommand(1);
  std::string engine = "efficient";
  bool verbose = false, json = false;
  app.add_option("--engine", engine, "efficient or oracle")
      ->check(CLI::IsMember({"efficient", "oracle"}));
  app.add_flag("--verbose", verbose, "print intermediate partitions to stderr");
  app.add_flag("--json", json, "print a JSON result object");

  std::string model, model2, relation, x, y, mode = "crisp", kind;
  std::function<Output(const EngineConfig &)> action;
  std::vector<std::string> inputs;

  auto *crisp = app.add_subcommand("crisp-partition", "greatest crisp bisimulation as a partition");
  crisp->add_option("MODEL", model)->required();
  crisp->callback([&] {
    inputs = {model};
    action = [&](const EngineConfig &cfg) {
      auto m = io::load_model(model);
      auto p = crisp_partition_system(m, cfg);
      return Output{p.to_text(&m.base().state_names()),
                    io::partition_json(p, m.base().state_names())};
    };
  });

  auto *fuzzy = app.add_subcommand("fuzzy-partition",
                                   "greatest fuzzy bisimulation as a compact fuzzy partition");
  fuzzy->add_option("MODEL", model)->required();
  fuzzy->callback([&] {
    inputs = {model};
    action = [&](const EngineConfig &cfg) {
      auto m = io::load_model(model);
      auto c = fuzzy_partition_system(m, cfg);
      return Output{c.to_text(&m.base().state_names()), io::cfp_json(c, m.base().state_names())};
    };
  });

  auto *degree = app.add_subcommand("degree", "bisimilarity degree of two states");
  degree->add_option("MODEL", model)->required();
  degree->add_option("X", x)->required();
  degree->add_option("Y", y)->required();
  degree->callback([&] {
    inputs = {model};
    action = [&](const EngineConfig &cfg) {
      auto m = io::load_model(model);
      auto sx = detail::state_of(m, x), sy = detail::state_of(m, y);
      auto d = fuzzy_partition_system(m, cfg).degree(sx, sy);
      return Output{d.to_string(), Json(d.to_string())};
    };
  });

  auto *csim = app.add_subcommand("crisp-sim", "greatest crisp simulation between two models");
  csim->add_option("A", model)->required();
  csim->add_option("B", model2)->required();
  csim->callback([&] {
    inputs = {model, model2};
    action = [&](const EngineConfig &cfg) {
      auto a = io::load_model(model), b = io::load_model(model2);
      auto r = crisp_simulation_nflts(a, b, cfg);
      const auto &rn = a.base().state_names(), &cn = b.base().state_names();
      return Output{io::crisp_relation_text(r, rn, cn), detail::crisp_pairs_json(r, rn, cn)};
    };
  });

  auto *fsim = app.add_subcommand("fuzzy-sim", "greatest fuzzy simulation between two models");
  fsim->add_option("A", model)->required();
  fsim->add_option("B", model2)->required();
  fsim->callback([&] {
    inputs = {model, model2};
    action = [&](const EngineConfig &cfg) {
      auto a = io::load_model(model), b = io::load_model(model2);
      auto r = fuzzy_simulation_nflts(a, b, cfg);
      const auto &rn = a.base().state_names(), &cn = b.base().state_names();
      return Output{io::fuzzy_relation_text(r, rn, cn), detail::fuzzy_pairs_json(r, rn, cn)};
    };
  });

  auto *between = app.add_subcommand("bisim-between",
                                     "greatest bisimulation between the states of two models");
  between->add_option("A", model)->required();
  between->add_option("B", model2)->required();
  between->add_option("--mode", mode, "crisp or fuzzy")
      ->check(CLI::IsMember({"crisp", "fuzzy"}));
  between->callback([&] {
    inputs = {model, model2};
    action = [&](const EngineConfig &cfg) {
      auto a = io::load_model(model), b = io::load_model(model2);
      const auto &rn = a.base().state_names(), &cn = b.base().state_names();
      if (mode == "crisp") {
        auto r = crisp_bisimulation_between(a, b, cfg);
        return Output{io::crisp_relation_text(r, rn, cn), detail::crisp_pairs_json(r, rn, cn)};
      }
      auto r = fuzzy_bisimulation_between(a, b, cfg);
      return Output{io::fuzzy_relation_text(r, rn, cn), detail::fuzzy_pairs_json(r, rn, cn)};
    };
  });

  auto *check = app.add_subcommand("check", "check that a relation is a bisimulation");
  check->add_option("MODEL", model)->required();
  check->add_option("RELATION", relation)->required();
  check->add_option("--kind", kind, "crisp-bisim or fuzzy-bisim")
      ->required()
      ->check(CLI::IsMember({"crisp-bisim", "fuzzy-bisim"}));
  check->callback([&] {
    inputs = {model, relation};
    action = [&](const EngineConfig &) {
      auto m = io::load_model(model);
      auto r = io::parse_relation(io::read_file(relation), m, relation);
      oracle::WitnessReport rep;
      if (kind == "crisp-bisim") {
        const auto n = m.state_count();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (!r(i, j).is_zero() && !r(i, j).is_one())
              throw ModelError(relation + ": a crisp relation cannot carry degree " +
                               r(i, j).to_string());
        rep = oracle::is_crisp_bisim_nfts(r.cut(Degree::one()), m);
      } else {
        rep = oracle::is_fuzzy_bisim_nfts(r, m);
      }
      std::vector<std::string> names = m.base().state_names();
      Json j{{"holds", rep.holds}};
      if (!rep.holds) {
        j["clause"] = rep.clause;
        j["witness"] = rep.describe(&names);
      }
      return Output{rep.describe(&names), j, rep.holds ? 0 : 1};
    };
  });

  bench::GenSpec spec;
  std::string format = "json";
  auto *gen = app.add_subcommand("gen", "generate a random model");
  auto add_spec = [&](CLI::App *sub) {
    sub->add_option("--states", spec.states)->capture_default_str();
    sub->add_option("--actions", spec.actions)->capture_default_str();
    sub->add_option("--dists-min", spec.dists_min)->capture_default_str();
    sub->add_option("--dists-max", spec.dists_max)->capture_default_str();
    sub->add_option("--support-min", spec.support_min)->capture_default_str();
    sub->add_option("--support-max", spec.support_max)->capture_default_str();
    sub->add_option("--l", spec.l, "number of distinct degrees plus 2")->capture_default_str();
    sub->add_option("--labels", spec.labels)->capture_default_str();
    sub->add_option("--label-density", spec.label_density)->capture_default_str();
    sub->add_option("--seed", spec.seed)->capture_default_str();
  };
  add_spec(gen);
  gen->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  gen->callback([&] {
    action = [&](const EngineConfig &) {
      Nflts m;
      try {
        m = bench::generate(spec);
      } catch (const std::invalid_argument &e) {
        throw ModelError(e.what());
      }
      std::string text = format == "json" ? io::to_json(m) : io::to_text(m);
      if (!text.empty() && text.back() == '\n')
        text.pop_back();
      return Output{text, Json::parse(io::to_json(m))};
    };
  });

  std::string sizes = "100,200,400,800", csv_path;
  std::size_t reps = 1, oracle_max_m = 0;
  auto *benchc = app.add_subcommand("bench", "time the pipelines on a generated family");
  benchc->add_option("--mode", mode, "crisp or fuzzy")->check(CLI::IsMember({"crisp", "fuzzy"}));
  benchc->add_option("--sizes", sizes, "comma-separated state counts")->capture_default_str();
  benchc->add_option("--reps", reps)->capture_default_str();
  benchc->add_option("--oracle-max-m", oracle_max_m, "also run the oracle when m is at most this")
      ->capture_default_str();
  benchc->add_option("--csv", csv_path, "write the CSV here instead of stdout");
  benchc->add_option("--seed", spec.seed)->capture_default_str();
  benchc->add_option("--l", spec.l)->capture_default_str();
  benchc->callback([&] {
    action = [&](const EngineConfig &) {
      bench::GenSpec family = bench::scaling_family(spec.seed, spec.l);
      bench::ScalingOptions opt;
      opt.mode = mode == "crisp" ? bench::Mode::crisp : bench::Mode::fuzzy;
      opt.repetitions = reps;
      opt.oracle_max_m = oracle_max_m;
      std::vector<bench::BenchRecord> recs;
      try {
        recs = bench::scaling_run(family, detail::parse_sizes(sizes), opt);
      } catch (const std::invalid_argument &e) {
        throw ModelError(e.what());
      }
      std::string csv = bench::csv_header() + "\n";
      for (const auto &r : recs)
        csv += bench::csv_row(r) + "\n";
      const std::string prefix = mode + "/";
      std::ostringstream summary;
      summary << "slope(" << prefix << "efficient) = "
              << bench::loglog_slope(recs, prefix + "efficient");
      if (oracle_max_m > 0)
        summary << "\nslope(" << prefix << "oracle) = "
                << bench::loglog_slope(recs, prefix + "oracle");
      std::string text;
      if (csv_path.empty()) {
        text = csv + summary.str();
      } else {
        std::ofstream f(csv_path);
        if (!f)
          throw ModelError(csv_path + ": cannot write");
        f << csv;
        text = summary.str();
      }
      Json j{{"records", recs.size()},
             {"slope_efficient", bench::loglog_slope(recs, prefix + "efficient")}};
      return Output{text, j};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    if (auto *sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    else
      err << "run with --help for usage\n";
    return 2;
  }
  if (!action) {
    err << "error: no subcommand\n";
    return 2;
  }

  EngineConfig cfg;
  cfg.strategy = parse_strategy(engine);
  cfg.verbose = verbose;
  cfg.log = &err;
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto start = std::chrono::steady_clock::now();
    Output result = action(cfg);
    const auto stop = std::chrono::steady_clock::now();
    if (json) {
      Json doc;
      doc["command"] = command;
      doc["input"] = inputs;
      doc["result"] = result.json;
      doc["engine"] = engine;
      doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
      out << doc.dump(2) << "\n";
    } else {
      out << result.text;
      if (!result.text.empty() && result.text.back() != '\n')
        out << "\n";
    }
    return result.code;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace fuzzybisim::cli
