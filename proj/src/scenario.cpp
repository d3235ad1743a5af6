#include "macblocks/scenario.hpp"

namespace macblocks {

std::vector<std::string> scenarioErrors(const Scenario& s) {
  std::vector<std::string> errors;
  if (s.nodeCount < 0) errors.push_back("nodeCount must be >= 0");
  if (s.offeredLoadPktPerSec < 0) errors.push_back("offeredLoadPktPerSec must be >= 0");
  if (s.ber < 0 || s.ber >= 1) errors.push_back("ber must be in [0, 1)");
  if (!s.noise && s.ber != 0) errors.push_back("ber must be 0 when noise is absent");
  if (s.noise && s.ber <= 0) errors.push_back("ber must be > 0 when noise is present");
  if (s.areaWidthMeters <= 0 || s.areaHeightMeters <= 0)
    errors.push_back("area dimensions must be > 0");
  if (s.radioRangeMeters <= 0) errors.push_back("radioRangeMeters must be > 0");
  if (s.durationSec <= 0) errors.push_back("durationSec must be > 0");
  double prev = 0.0;
  for (const auto& join : s.joinSchedule) {
    if (join.timeSec < prev) {
      errors.push_back("joinSchedule must be sorted by time");
      break;
    }
    prev = join.timeSec;
  }
  for (const auto& join : s.joinSchedule)
    if (join.count <= 0) {
      errors.push_back("joinSchedule counts must be > 0");
      break;
    }
  return errors;
}

std::vector<std::string> trainingConfigErrors(const TrainingConfig& c) {
  std::vector<std::string> errors;
  if (c.gamma < 0 || c.gamma >= 1) errors.push_back("gamma must be in [0, 1)");
  if (c.historyLen < 1) errors.push_back("historyLen must be >= 1");
  if (c.sgdStepSize <= 0) errors.push_back("sgdStepSize must be > 0");
  if (c.epsilonStart < 0 || c.epsilonStart > 1 || c.epsilonEnd < 0 || c.epsilonEnd > 1)
    errors.push_back("epsilon bounds must be in [0, 1]");
  if (c.epsilonDecaySteps < 1) errors.push_back("epsilonDecaySteps must be >= 1");
  if (c.replayCapacity < 1) errors.push_back("replayCapacity must be >= 1");
  if (c.batchSize < 1) errors.push_back("batchSize must be >= 1");
  if (c.targetSyncInterval < 1) errors.push_back("targetSyncInterval must be >= 1");
  if (c.stepsPerEpisode < 1) errors.push_back("stepsPerEpisode must be >= 1");
  if (c.simEpochSec <= 0) errors.push_back("simEpochSec must be > 0");
  if (c.episodes < 1) errors.push_back("episodes must be >= 1");
  if (c.rewardScale <= 0) errors.push_back("rewardScale must be > 0");
  return errors;
}

}  // namespace macblocks
