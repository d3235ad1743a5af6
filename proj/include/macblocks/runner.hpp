#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "macblocks/agent.hpp"
#include "macblocks/config.hpp"
#include "macblocks/errors.hpp"
#include "macblocks/json_io.hpp"
#include "macblocks/scenario.hpp"
#include "macblocks/sim.hpp"

namespace macblocks {

// The eight reference scenarios: (nodes, load, noise) =
// (5,8,no) (5,8,yes) (15,100,no) (15,100,yes) (20,470,no) (20,470,yes)
// (50,470,no) (50,470,yes); noisy rows use ber 1e-4. 10 s each, seed 1.
std::vector<Scenario> builtinScenarios();

// One node at t=0, +1 every 3 s through t=42 (15 total), 45 s, low load.
Scenario lowLoadRampScenario();
// 25 nodes at t=0, +1 every 2 s through t=50 (50 total), 52 s, saturated load.
Scenario highLoadRampScenario();

struct CurvePoint {
  double timeSec = 0;
  std::string arm;
  std::uint64_t seed = 0;
  double throughputMbps = 0;
};

struct ArmResult {
  std::string arm;
  std::vector<double> perSeedMbps;  // aligned with ComparisonReport::seeds
  double meanMbps = 0;
  double stddevMbps = 0;
};

struct ComparisonReport {
  std::vector<std::uint64_t> seeds;
  std::vector<ArmResult> arms;       // [0] = "baseline", [1] = "agent"
  std::vector<CurvePoint> curve;     // one row per epoch x arm x seed
  double epochSec = 0;
};

// Runs the scenario once per seed for each arm: baseline uses
// defaultCsmaCaConfig(), the agent arm uses the agent's greedy config. The
// curve additionally samples each arm at epochSec (= agent's simEpochSec)
// resolution. Both arms see the same channel seeds, so identical configs give
// identical per-seed results.
ComparisonReport compareBaseline(const Scenario& scenario,
                                 const std::vector<std::uint64_t>& seeds,
                                 const DqnAgent& agent,
                                 const TimingParams& timing = {});

struct SelectionFrequencyTable {
  int repeats = 0;
  // (block, value, count) over every domain value, zero counts included.
  std::vector<std::tuple<std::string, std::string, int>> blockCounts;
  // Distinct greedy configs with counts, most frequent first (key() ties).
  std::vector<std::pair<BlockConfig, int>> configCounts;
};

// Trains `repeats` independent agents on the scenario and tallies which
// blocks their greedy final configs use.
SelectionFrequencyTable selectBlocks(const Scenario& scenario, int repeats,
                                     const TrainingConfig& training,
                                     const TimingParams& timing = {},
                                     const RewardSpec& reward = {},
                                     std::uint64_t baseSeed = 1);

struct SweepRow {
  BlockConfig config;
  std::vector<double> perSeedMbps;
  double meanMbps = 0;
  double stddevMbps = 0;
};

struct SweepOptions {
  // configs x seeds x simulated seconds; defaults to 4096 x 3 x 10.
  double budget = 4096.0 * 3 * 10;
};

// Simulates every valid config over the seed list; rows sorted by mean
// throughput descending, lexicographic config key on ties. Throws
// BudgetExceeded up front when the job would blow the cap.
std::vector<SweepRow> exhaustiveSweep(const Scenario& scenario,
                                      const std::vector<std::uint64_t>& seeds,
                                      const TimingParams& timing = {},
                                      const SweepOptions& options = {});

struct TrainResult {
  DqnAgent agent;
  std::vector<EpisodeRecord> episodes;
};

TrainResult trainAgent(const Scenario& scenario, const TrainingConfig& training,
                       const TimingParams& timing = {},
                       const RewardSpec& reward = {},
                       std::uint64_t agentSeed = 1);

// CSV cells use %.6g, '.' decimal separator, no locale.
std::string formatNum(double v);

void writeThroughputCurveCsv(const std::string& path,
                             const std::vector<CurvePoint>& curve);
void writeSelectionFrequencyCsv(const std::string& path,
                                const SelectionFrequencyTable& table);
void writeSweepCsv(const std::string& path, const std::vector<SweepRow>& rows);

Json toJson(const ComparisonReport& report);
Json toJson(const SelectionFrequencyTable& table);
Json sweepToJson(const std::vector<SweepRow>& rows, std::size_t topK = 50);

}  // namespace macblocks
