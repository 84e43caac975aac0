#pragma once

#include <json.hpp>

#include "payoffset/constructions.hpp"
#include "payoffset/core_games.hpp"
#include "payoffset/feasible_sets.hpp"
#include "payoffset/instances.hpp"
#include "payoffset/set_distance.hpp"

namespace payoffset {

using Json = nlohmann::json;

Json to_json(const Strategy& s);
Json to_json(const StrategyProfile& p);
Json to_json(const PayoffMatrix& M);  // {"entries": [[row], ...]}
Json to_json(const SampleRecord& r);
// Every system built here has the box [-1,1]^dim, written as "box": 1.
Json to_json(const HalfspaceSystem& sys);
Json to_json(const HausdorffEstimate& e);
Json to_json(const ConstructionReport& r);
Json to_json(const LbInstance& inst);

Strategy strategy_from_json(const Json& j);
PayoffMatrix matrix_from_json(const Json& j);
StrategyProfile profile_from_json(const Json& j);  // {"x": [...], "y": [...]}

}  // namespace payoffset
