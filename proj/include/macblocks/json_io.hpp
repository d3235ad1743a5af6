#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "macblocks/config.hpp"
#include "macblocks/errors.hpp"
#include "macblocks/scenario.hpp"
#include "macblocks/sim.hpp"

namespace macblocks {

using Json = nlohmann::ordered_json;

Json toJson(const BlockConfig& c);
Json toJson(const Scenario& s);
Json toJson(const TimingParams& t);
Json toJson(const TrainingConfig& t);
Json toJson(const RewardSpec& r);
Json toJson(const SimStats& s);

// Parsers start from the type's defaults and apply the given keys on top.
// Unknown keys and type mismatches throw std::invalid_argument.
BlockConfig blockConfigFromJson(const Json& j);
Scenario scenarioFromJson(const Json& j);
TimingParams timingParamsFromJson(const Json& j);
TrainingConfig trainingConfigFromJson(const Json& j);
RewardSpec rewardSpecFromJson(const Json& j);

Json loadJsonFile(const std::string& path);
void saveJsonFile(const std::string& path, const Json& j);

}  // namespace macblocks
