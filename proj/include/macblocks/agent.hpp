#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "macblocks/config.hpp"
#include "macblocks/logic.hpp"
#include "macblocks/net.hpp"
#include "macblocks/rng.hpp"
#include "macblocks/scenario.hpp"
#include "macblocks/sim.hpp"

namespace macblocks {

struct AgentState {
  std::vector<double> configEncoding;     // 29-dim one-hot
  std::vector<double> throughputHistory;  // normalized, most recent last

  std::vector<double> toInput() const;
};

AgentState initialAgentState(const BlockConfig& startConfig, int historyLen);

// Shifts a new normalized throughput sample into the history window and swaps
// in the encoding of the config that produced it.
AgentState pushHistory(const AgentState& state, const BlockConfig& config,
                       double throughputMbps, double scale);

struct Transition {
  AgentState state;
  int actionIdx = 0;
  double reward = 0;  // normalized by TrainingConfig.rewardScale
  AgentState nextState;
  bool terminal = false;
};

double computeReward(const SimStats& stats, const RewardSpec& spec);

int selectAction(const std::vector<double>& qValues, double epsilon, Rng& rng);

double tdTarget(double reward, double gamma, double maxNextQ, bool terminal);

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}
  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  const Transition& sample(Rng& rng) const;

 private:
  std::size_t capacity_;
  std::deque<Transition> items_;
};

class DqnAgent {
 public:
  DqnAgent(const TrainingConfig& cfg, std::uint64_t seed);

  const TrainingConfig& config() const { return cfg_; }
  int actionCount() const { return static_cast<int>(validActionSpace().size()); }
  double epsilon() const;

  int act(const AgentState& state);             // epsilon-greedy, advances schedule
  int greedyAction(const AgentState& state) const;
  std::vector<double> qValues(const AgentState& state) const;

  void observe(Transition t);
  // One SGD step on a sampled minibatch; returns batch loss (or -1 when the
  // replay buffer is still smaller than batchSize).
  double trainStep();
  double trainStep(const std::vector<Transition>& batch);

  int envSteps() const { return envSteps_; }
  int gradientSteps() const { return gradientSteps_; }

  Json toJson() const;
  static DqnAgent fromJson(const Json& j);
  void save(const std::string& path) const;
  static DqnAgent load(const std::string& path);

  const NNParams& onlineNet() const { return online_; }

 private:
  DqnAgent(const TrainingConfig& cfg, NNParams online, NNParams target, int envSteps,
           int gradientSteps, std::uint64_t seed);

  TrainingConfig cfg_;
  NNParams online_, target_;
  int envSteps_ = 0;
  int gradientSteps_ = 0;
  ReplayBuffer replay_;
  Rng rng_;
  std::uint64_t seed_ = 0;
};

struct EpisodeStep {
  BlockConfig config;
  int actionIdx = 0;
  double throughputMbps = 0;
  double reward = 0;  // unnormalized
  double loss = -1;   // -1 when no gradient step ran
};

struct EpisodeRecord {
  std::vector<EpisodeStep> steps;
  double meanReward = 0;
};

// One epoch-sized slice of a scenario timeline starting at tStart: nodes that
// have joined by then fold into nodeCount, aggregate load is rescaled so the
// per-node rate stays at its full-schedule value, and the slice seed derives
// from (scenario.seed, seedA, seedB).
Scenario epochSlice(const Scenario& base, double epochSec, double tStart,
                    std::uint64_t seedA, std::uint64_t seedB);

// Fixed-length episode against the simulator: pick config, run simEpochSec,
// observe throughput, learn. Epoch seeds derive from (scenario.seed, episode,
// step) so different configs see common arrival randomness.
EpisodeRecord runEpisode(DqnAgent& agent, const Scenario& scenario,
                         const TimingParams& timing, const RewardSpec& reward,
                         int episodeIndex);

BlockConfig greedyConfig(const DqnAgent& agent, const Scenario& scenario,
                         const TimingParams& timing, const RewardSpec& reward,
                         int probeSteps = 3);

}  // namespace macblocks
