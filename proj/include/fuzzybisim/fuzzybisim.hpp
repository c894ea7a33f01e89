#pragma once

#include "fuzzybisim/bench.hpp"
#include "fuzzybisim/crisp_engine.hpp"
#include "fuzzybisim/degree.hpp"
#include "fuzzybisim/engine_config.hpp"
#include "fuzzybisim/flg.hpp"
#include "fuzzybisim/fuzzy_engine.hpp"
#include "fuzzybisim/fuzzy_set.hpp"
#include "fuzzybisim/io.hpp"
#include "fuzzybisim/lca.hpp"
#include "fuzzybisim/model.hpp"
#include "fuzzybisim/oracle.hpp"
#include "fuzzybisim/partition.hpp"
#include "fuzzybisim/refinement.hpp"
#include "fuzzybisim/relation.hpp"
#include "fuzzybisim/simulation.hpp"
