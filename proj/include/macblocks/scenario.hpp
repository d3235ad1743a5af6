#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace macblocks {

// One entry of a node-join schedule: `count` nodes activate at `timeSec`.
struct NodeJoin {
  double timeSec = 0.0;
  int count = 0;
  bool operator==(const NodeJoin&) const = default;
};

// The networking environment a protocol runs in. offeredLoadPktPerSec is the
// aggregate Poisson arrival rate once every node (initial + joins) is active;
// each node generates its equal share from its activation time on.
struct Scenario {
  int nodeCount = 1;
  double offeredLoadPktPerSec = 0.0;
  bool noise = false;
  double ber = 0.0;
  double areaWidthMeters = 200.0;
  double areaHeightMeters = 200.0;
  double radioRangeMeters = 250.0;
  double durationSec = 10.0;
  uint64_t seed = 1;
  std::vector<NodeJoin> joinSchedule;

  bool operator==(const Scenario&) const = default;
};

std::vector<std::string> scenarioErrors(const Scenario& s);

// Channel-level outcome of one simulation run.
struct SimStats {
  double avgThroughputMbps = 0.0;
  int64_t deliveredBits = 0;
  int64_t generatedBits = 0;
  int64_t collisions = 0;
  int64_t retransmissions = 0;
  int64_t drops = 0;
  double controlAirtimeSec = 0.0;
  double dataAirtimeSec = 0.0;
  double idleSec = 0.0;
  double energyJoules = 0.0;
};

// reward = w0 * throughput(Mbps) - w1 * energy-per-delivered-bit(uJ/bit)
struct RewardSpec {
  double w0 = 1.0;
  double w1 = 0.0;
};

// Agent hyperparameters. qLearningRate is kept for configuration
// compatibility only; the optimizer uses sgdStepSize.
struct TrainingConfig {
  double gamma = 0.8;
  int historyLen = 15;
  double qLearningRate = 1.0;
  double sgdStepSize = 1e-3;
  double epsilonStart = 1.0;
  double epsilonEnd = 0.05;
  int epsilonDecaySteps = 2000;
  int replayCapacity = 10000;
  int batchSize = 32;
  int targetSyncInterval = 100;
  int stepsPerEpisode = 50;
  double simEpochSec = 0.5;
  int episodes = 10;
  double rewardScale = 54.0;  // divides rewards before TD targets

  bool operator==(const TrainingConfig&) const = default;
};

std::vector<std::string> trainingConfigErrors(const TrainingConfig& c);

}  // namespace macblocks
