#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "macblocks/agent.hpp"

using namespace macblocks;

namespace {

TrainingConfig tinyTraining() {
  TrainingConfig t;
  t.historyLen = 4;
  t.batchSize = 4;
  t.replayCapacity = 64;
  t.epsilonDecaySteps = 20;
  t.stepsPerEpisode = 6;
  t.simEpochSec = 0.05;
  t.episodes = 2;
  t.targetSyncInterval = 3;
  return t;
}

Scenario tinyScenario() {
  Scenario s;
  s.nodeCount = 2;
  s.offeredLoadPktPerSec = 2000.0;
  s.durationSec = 1.0;
  s.seed = 5;
  return s;
}

Transition makeTransition(const TrainingConfig& cfg, int action, double reward) {
  Transition tr;
  tr.state = initialAgentState(defaultCsmaCaConfig(), cfg.historyLen);
  tr.actionIdx = action;
  tr.reward = reward;
  tr.nextState = tr.state;
  return tr;
}

}  // namespace

TEST_CASE("agent state wiring") {
  AgentState s = initialAgentState(defaultCsmaCaConfig(), 15);
  CHECK(s.configEncoding.size() == kEncodingDim);
  CHECK(s.throughputHistory.size() == 15);
  for (double v : s.throughputHistory) CHECK(v == 0.0);
  CHECK(s.toInput().size() == kEncodingDim + 15);

  BlockConfig next = defaultCsmaCaConfig();
  next.dataRateMbps = 24;
  AgentState pushed = pushHistory(s, next, 5.4, 54.0);
  CHECK(pushed.throughputHistory.size() == 15);
  CHECK(pushed.throughputHistory.back() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(pushed.throughputHistory.front() == 0.0);
  CHECK(pushed.configEncoding == encodeConfig(next));

  AgentState twice = pushHistory(pushed, next, 10.8, 54.0);
  CHECK(twice.throughputHistory[13] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(twice.throughputHistory[14] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("reward weighs throughput against energy") {
  SimStats st;
  st.avgThroughputMbps = 6.0;
  st.deliveredBits = 12'000'000;
  st.energyJoules = 24.0;  // 2 uJ per delivered bit
  CHECK(computeReward(st, {1.0, 0.0}) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(computeReward(st, {1.0, 0.5}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(computeReward(st, {0.0, 1.0}) == doctest::Approx(-2.0).epsilon(1e-12));

  SimStats dead;
  dead.avgThroughputMbps = 0.0;
  dead.deliveredBits = 0;
  dead.energyJoules = 1.0;
  CHECK(std::isfinite(computeReward(dead, {1.0, 1.0})));
}

TEST_CASE("action selection") {
  Rng rng(3);
  SUBCASE("greedy takes the argmax") {
    CHECK(selectAction({0.1, 0.9, 0.3}, 0.0, rng) == 1);
    CHECK(selectAction({-5.0, -1.0, -3.0}, 0.0, rng) == 1);
  }
  SUBCASE("ties resolve to the lowest index") {
    CHECK(selectAction({0.5, 0.5, 0.5}, 0.0, rng) == 0);
    CHECK(selectAction({0.1, 0.7, 0.7}, 0.0, rng) == 1);
  }
  SUBCASE("full exploration reaches every action") {
    std::set<int> seen;
    for (int i = 0; i < 200; ++i) seen.insert(selectAction({0.0, 0.0, 0.0, 0.0}, 1.0, rng));
    CHECK(seen == std::set<int>{0, 1, 2, 3});
  }
  SUBCASE("empty Q-vector is an error") {
    CHECK_THROWS_AS(selectAction({}, 0.0, rng), std::invalid_argument);
  }
}

TEST_CASE("TD target") {
  CHECK(tdTarget(1.0, 0.8, 2.0, false) == doctest::Approx(2.6).epsilon(1e-12));
  CHECK(tdTarget(1.0, 0.8, 2.0, true) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tdTarget(-0.5, 0.0, 9.0, false) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("replay buffer evicts oldest") {
  TrainingConfig cfg = tinyTraining();
  ReplayBuffer buf(3);
  for (int i = 0; i < 5; ++i) buf.push(makeTransition(cfg, i, i));
  CHECK(buf.size() == 3);
  Rng rng(1);
  std::set<int> seen;
  for (int i = 0; i < 100; ++i) seen.insert(buf.sample(rng).actionIdx);
  CHECK(seen == std::set<int>{2, 3, 4});
}

TEST_CASE("agent construction and schedule") {
  TrainingConfig cfg = tinyTraining();
  DqnAgent agent(cfg, 11);
  CHECK(agent.actionCount() == 3920);
  CHECK(agent.envSteps() == 0);
  CHECK(agent.gradientSteps() == 0);
  CHECK(agent.epsilon() == doctest::Approx(1.0).epsilon(1e-12));

  AgentState s = initialAgentState(defaultCsmaCaConfig(), cfg.historyLen);
  CHECK(agent.qValues(s).size() == 3920);

  for (int i = 0; i < 10; ++i) agent.act(s);
  CHECK(agent.envSteps() == 10);
  CHECK(agent.epsilon() ==
        doctest::Approx(1.0 + (0.05 - 1.0) * 10.0 / 20.0).epsilon(1e-12));
  for (int i = 0; i < 30; ++i) agent.act(s);
  CHECK(agent.epsilon() == doctest::Approx(cfg.epsilonEnd).epsilon(1e-12));

  TrainingConfig bad = cfg;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(DqnAgent(bad, 1), std::invalid_argument);
}

TEST_CASE("fresh agents start with near-zero Q-values") {
  DqnAgent agent(tinyTraining(), 2);
  AgentState s = initialAgentState(defaultCsmaCaConfig(), 4);
  auto q = agent.qValues(s);
  double hi = *std::max_element(q.begin(), q.end());
  double lo = *std::min_element(q.begin(), q.end());
  CHECK(std::abs(hi) < 0.5);
  CHECK(std::abs(lo) < 0.5);
}

TEST_CASE("trainStep waits for a full batch then learns") {
  TrainingConfig cfg = tinyTraining();
  DqnAgent agent(cfg, 4);
  CHECK(agent.trainStep() == -1.0);
  for (int i = 0; i < cfg.batchSize - 1; ++i) {
    agent.observe(makeTransition(cfg, i, 0.1));
    CHECK(agent.trainStep() == -1.0);
  }
  agent.observe(makeTransition(cfg, 7, 0.1));
  double loss = agent.trainStep();
  CHECK(loss >= 0.0);
  CHECK(agent.gradientSteps() == 1);
  CHECK(agent.trainStep() >= 0.0);
  CHECK(agent.gradientSteps() == 2);
  CHECK_THROWS_AS(agent.trainStep(std::vector<Transition>{}), std::invalid_argument);
}

TEST_CASE("repeated training drives the chosen action's Q toward its target") {
  TrainingConfig cfg = tinyTraining();
  cfg.gamma = 0.0;
  cfg.sgdStepSize = 0.05;
  DqnAgent agent(cfg, 9);
  Transition tr = makeTransition(cfg, 100, 0.5);
  tr.terminal = true;
  std::vector<Transition> batch(cfg.batchSize, tr);
  for (int i = 0; i < 300; ++i) agent.trainStep(batch);
  AgentState s = initialAgentState(defaultCsmaCaConfig(), cfg.historyLen);
  CHECK(agent.qValues(s)[100] == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("checkpoint round-trip is exact") {
  TrainingConfig cfg = tinyTraining();
  DqnAgent agent(cfg, 21);
  AgentState s = initialAgentState(defaultCsmaCaConfig(), cfg.historyLen);
  for (int i = 0; i < 8; ++i) {
    agent.act(s);
    agent.observe(makeTransition(cfg, i * 11, 0.2));
  }
  for (int i = 0; i < 3; ++i) agent.trainStep();
  REQUIRE(agent.gradientSteps() == 3);

  Json j = Json::parse(agent.toJson().dump());
  DqnAgent back = DqnAgent::fromJson(j);
  CHECK(back.envSteps() == agent.envSteps());
  CHECK(back.gradientSteps() == agent.gradientSteps());
  CHECK(back.config() == agent.config());
  CHECK(back.onlineNet().weights == agent.onlineNet().weights);
  CHECK(back.onlineNet().biases == agent.onlineNet().biases);
  auto qa = agent.qValues(s);
  auto qb = back.qValues(s);
  CHECK(qa == qb);
}

TEST_CASE("checkpoint loader rejects foreign files") {
  DqnAgent agent(tinyTraining(), 1);
  Json good = agent.toJson();

  Json notAgent = good;
  notAgent["kind"] = "something-else";
  CHECK_THROWS_AS(DqnAgent::fromJson(notAgent), std::invalid_argument);

  Json wrongSpace = good;
  wrongSpace["actionSpaceFingerprint"] = 12345u;
  CHECK_THROWS_AS(DqnAgent::fromJson(wrongSpace), std::invalid_argument);

  Json narrow = good;
  narrow["online"]["layerSizes"].back() = 7;
  CHECK_THROWS_AS(DqnAgent::fromJson(narrow), std::runtime_error);

  CHECK_THROWS_AS(DqnAgent::fromJson(Json::object()), std::invalid_argument);
}

TEST_CASE("epoch slices fold the join schedule into the node count") {
  Scenario base;
  base.nodeCount = 10;
  base.offeredLoadPktPerSec = 470.0;
  base.durationSec = 30.0;
  base.seed = 77;
  base.joinSchedule = {{5.0, 4}, {12.0, 6}};

  Scenario early = epochSlice(base, 0.5, 0.0, 1, 2);
  CHECK(early.nodeCount == 10);
  CHECK(early.offeredLoadPktPerSec == doctest::Approx(470.0 * 10 / 20).epsilon(1e-12));
  CHECK(early.durationSec == 0.5);
  CHECK(early.joinSchedule.empty());
  CHECK(early.seed == mixSeed(77, 1, 2));

  Scenario mid = epochSlice(base, 0.5, 5.0, 1, 3);
  CHECK(mid.nodeCount == 14);
  CHECK(mid.offeredLoadPktPerSec == doctest::Approx(470.0 * 14 / 20).epsilon(1e-12));

  Scenario late = epochSlice(base, 0.5, 20.0, 1, 4);
  CHECK(late.nodeCount == 20);
  CHECK(late.offeredLoadPktPerSec == doctest::Approx(470.0).epsilon(1e-12));

  CHECK(epochSlice(base, 0.5, 5.0, 1, 3).seed != epochSlice(base, 0.5, 5.0, 1, 4).seed);
}

TEST_CASE("episodes run end to end and reproduce bit-identically") {
  TrainingConfig cfg = tinyTraining();
  Scenario sc = tinyScenario();
  TimingParams tm;
  RewardSpec rw;

  DqnAgent a(cfg, 31);
  DqnAgent b(cfg, 31);
  EpisodeRecord ra = runEpisode(a, sc, tm, rw, 0);
  EpisodeRecord rb = runEpisode(b, sc, tm, rw, 0);

  REQUIRE(ra.steps.size() == static_cast<std::size_t>(cfg.stepsPerEpisode));
  CHECK(ra.meanReward == rb.meanReward);
  for (std::size_t i = 0; i < ra.steps.size(); ++i) {
    CHECK(ra.steps[i].actionIdx == rb.steps[i].actionIdx);
    CHECK(ra.steps[i].throughputMbps == rb.steps[i].throughputMbps);
    CHECK(ra.steps[i].reward == rb.steps[i].reward);
    CHECK(ra.steps[i].loss == rb.steps[i].loss);
    CHECK(validate(ra.steps[i].config, builtinRules()).valid);
  }
  CHECK(a.envSteps() == cfg.stepsPerEpisode);

  EpisodeRecord second = runEpisode(a, sc, tm, rw, 1);
  CHECK(second.steps.size() == ra.steps.size());
}

TEST_CASE("greedyConfig returns a valid member of the action space") {
  TrainingConfig cfg = tinyTraining();
  DqnAgent agent(cfg, 13);
  BlockConfig pick = greedyConfig(agent, tinyScenario(), TimingParams{}, RewardSpec{}, 2);
  CHECK(configIndex(pick) >= 0);
}
