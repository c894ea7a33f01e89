#pragma once

#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fuzzybisim {

enum class Strategy { baseline_fixpoint, efficient_refinement };

inline std::string to_string(Strategy s) {
  return s == Strategy::baseline_fixpoint ? "oracle" : "efficient";
}

inline Strategy parse_strategy(const std::string &text) {
  if (text == "efficient" || text == "efficient-refinement")
    return Strategy::efficient_refinement;
  if (text == "oracle" || text == "baseline" || text == "baseline-fixpoint")
    return Strategy::baseline_fixpoint;
  throw std::invalid_argument("unknown engine \"" + text + "\"");
}

struct EngineConfig {
  Strategy strategy = Strategy::efficient_refinement;
  bool verbose = false;
  std::ostream *log = &std::clog; // verbose trace goes here

  std::ostream *trace() const { return verbose ? log : nullptr; }
};

using CrispEngineConfig = EngineConfig;
using FuzzyEngineConfig = EngineConfig;

} // namespace fuzzybisim
