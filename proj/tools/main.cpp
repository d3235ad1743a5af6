#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macblocks/agent.hpp"
#include "macblocks/config.hpp"
#include "macblocks/errors.hpp"
#include "macblocks/json_io.hpp"
#include "macblocks/logic.hpp"
#include "macblocks/runner.hpp"
#include "macblocks/scenario.hpp"
#include "macblocks/sim.hpp"

namespace fs = std::filesystem;
using namespace macblocks;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool seedSet = false;
  std::string outDir;
  std::string timingFile;
  bool trace = false;
};

Scenario resolveScenario(const std::string& ref, const GlobalOpts& g) {
  Scenario s;
  if (ref == "ramp:low") {
    s = lowLoadRampScenario();
  } else if (ref == "ramp:high") {
    s = highLoadRampScenario();
  } else if (ref.rfind("builtin:", 0) == 0) {
    int idx = 0;
    try {
      idx = std::stoi(ref.substr(8));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad scenario reference: " + ref);
    }
    auto all = builtinScenarios();
    if (idx < 1 || idx > static_cast<int>(all.size()))
      throw std::invalid_argument("scenario index out of range: " + ref);
    s = all[idx - 1];
  } else {
    s = scenarioFromJson(loadJsonFile(ref));
  }
  if (g.seedSet) s.seed = g.seed;
  auto errs = scenarioErrors(s);
  if (!errs.empty()) throw std::invalid_argument(ref + ": " + errs.front());
  return s;
}

BlockConfig resolveConfig(const std::string& ref) {
  if (ref == "default") return defaultCsmaCaConfig();
  return blockConfigFromJson(loadJsonFile(ref));
}

TimingParams resolveTiming(const GlobalOpts& g) {
  if (g.timingFile.empty()) return {};
  return timingParamsFromJson(loadJsonFile(g.timingFile));
}

std::string outPath(const GlobalOpts& g, const std::string& name) {
  fs::path dir = g.outDir.empty() ? fs::path(".") : fs::path(g.outDir);
  return (dir / name).string();
}

void ensureOutDir(const GlobalOpts& g) {
  if (g.outDir.empty()) return;
  std::error_code ec;
  fs::create_directories(g.outDir, ec);
  if (ec) throw IoError("cannot create " + g.outDir + ": " + ec.message());
}

std::vector<std::uint64_t> seedList(const std::vector<std::uint64_t>& explicit_,
                                    std::uint64_t base, int count) {
  if (!explicit_.empty()) return explicit_;
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(base + i);
  return seeds;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int runValidate(const std::string& configRef) {
  BlockConfig cfg = resolveConfig(configRef);
  ValidationReport report = validate(cfg, builtinRules());
  if (report.valid) {
    std::cout << "valid: " << describeConfig(cfg) << "\n";
    return 0;
  }
  for (const std::string& m : report.messages()) std::cerr << m << "\n";
  return 2;
}

int runEnumerate(const GlobalOpts& g, bool dumpRules) {
  const auto& space = validActionSpace();
  if (dumpRules) {
    emit(rulesToJson(builtinRules()));
  } else {
    Json j;
    j["validConfigs"] = space.size();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(actionSpaceFingerprint()));
    j["actionSpaceFingerprint"] = buf;
    emit(j);
  }
  if (!g.outDir.empty()) {
    ensureOutDir(g);
    Json arr = Json::array();
    for (const BlockConfig& c : space) arr.push_back(toJson(c));
    saveJsonFile(outPath(g, "valid_configs.json"), arr);
  }
  return 0;
}

int runSimulate(const GlobalOpts& g, const std::string& configRef,
                const std::string& scenarioRef) {
  BlockConfig cfg = resolveConfig(configRef);
  Scenario sc = resolveScenario(scenarioRef, g);
  TimingParams tm = resolveTiming(g);
  SimOptions opt;
  if (g.trace) {
    ensureOutDir(g);
    opt.trace = true;
    opt.tracePath = outPath(g, "trace.tsv");
  }
  SimStats stats = simulate(cfg, sc, tm, opt);
  Json j;
  j["config"] = toJson(cfg);
  j["scenario"] = toJson(sc);
  j["stats"] = toJson(stats);
  emit(j);
  if (!g.outDir.empty()) {
    ensureOutDir(g);
    saveJsonFile(outPath(g, "simulate.json"), j);
  }
  return 0;
}

int runTrain(const GlobalOpts& g, const std::string& scenarioRef,
             const std::string& trainingFile, int episodesOverride,
             const std::vector<double>& rewardWeights) {
  Scenario sc = resolveScenario(scenarioRef, g);
  TimingParams tm = resolveTiming(g);
  TrainingConfig tc;
  if (!trainingFile.empty()) tc = trainingConfigFromJson(loadJsonFile(trainingFile));
  if (episodesOverride > 0) tc.episodes = episodesOverride;
  RewardSpec rw;
  if (!rewardWeights.empty()) {
    if (rewardWeights.size() != 2)
      throw std::invalid_argument("--reward expects w0,w1");
    rw.w0 = rewardWeights[0];
    rw.w1 = rewardWeights[1];
  }
  std::uint64_t agentSeed = g.seedSet ? g.seed : sc.seed;

  TrainResult result = trainAgent(sc, tc, tm, rw, agentSeed);

  ensureOutDir(g);
  std::string ckpt = outPath(g, "agent.json");
  result.agent.save(ckpt);

  Json j;
  j["checkpoint"] = ckpt;
  j["episodes"] = Json::array();
  for (std::size_t i = 0; i < result.episodes.size(); ++i) {
    Json e;
    e["episode"] = i;
    e["meanReward"] = result.episodes[i].meanReward;
    j["episodes"].push_back(std::move(e));
  }
  j["envSteps"] = result.agent.envSteps();
  j["gradientSteps"] = result.agent.gradientSteps();
  emit(j);
  saveJsonFile(outPath(g, "train_summary.json"), j);
  return 0;
}

int runEvaluate(const GlobalOpts& g, const std::string& checkpoint,
                const std::string& scenarioRef,
                const std::vector<std::uint64_t>& seedsOpt, int repeats) {
  DqnAgent agent = DqnAgent::load(checkpoint);
  Scenario sc = resolveScenario(scenarioRef, g);
  TimingParams tm = resolveTiming(g);
  auto seeds = seedList(seedsOpt, g.seedSet ? g.seed : sc.seed, repeats);

  ComparisonReport report = compareBaseline(sc, seeds, agent, tm);
  BlockConfig probe = greedyConfig(agent, sc, tm, RewardSpec{});

  Json j;
  j["greedyConfig"] = toJson(probe);
  j["agentMeanMbps"] = report.arms[1].meanMbps;
  j["agentStddevMbps"] = report.arms[1].stddevMbps;
  j["agentPerSeedMbps"] = report.arms[1].perSeedMbps;
  j["baselineMeanMbps"] = report.arms[0].meanMbps;
  j["seeds"] = report.seeds;
  emit(j);
  if (!g.outDir.empty()) {
    ensureOutDir(g);
    saveJsonFile(outPath(g, "evaluate.json"), j);
  }
  return 0;
}

int runCompare(const GlobalOpts& g, const std::string& checkpoint,
               const std::string& scenarioRef,
               const std::vector<std::uint64_t>& seedsOpt, int repeats) {
  DqnAgent agent = DqnAgent::load(checkpoint);
  Scenario sc = resolveScenario(scenarioRef, g);
  TimingParams tm = resolveTiming(g);
  auto seeds = seedList(seedsOpt, g.seedSet ? g.seed : sc.seed, repeats);

  ComparisonReport report = compareBaseline(sc, seeds, agent, tm);

  ensureOutDir(g);
  writeThroughputCurveCsv(outPath(g, "throughput_vs_time.csv"), report.curve);
  Json j = toJson(report);
  saveJsonFile(outPath(g, "compare_summary.json"), j);
  emit(j);
  return 0;
}

int runSweep(const GlobalOpts& g, const std::string& scenarioRef,
             const std::vector<std::uint64_t>& seedsOpt, int seedCount,
             double budget) {
  Scenario sc = resolveScenario(scenarioRef, g);
  TimingParams tm = resolveTiming(g);
  auto seeds = seedList(seedsOpt, g.seedSet ? g.seed : sc.seed, seedCount);
  SweepOptions opt;
  if (budget > 0) opt.budget = budget;

  std::vector<SweepRow> rows = exhaustiveSweep(sc, seeds, tm, opt);

  ensureOutDir(g);
  writeSweepCsv(outPath(g, "sweep.csv"), rows);
  Json j = sweepToJson(rows);
  saveJsonFile(outPath(g, "sweep_summary.json"), j);
  if (!rows.empty()) {
    Json top;
    top["best"] = toJson(rows.front().config);
    top["meanMbps"] = rows.front().meanMbps;
    emit(top);
  }
  return 0;
}

int runSelectBlocks(const GlobalOpts& g, const std::string& scenarioRef,
                    int repeats, const std::string& trainingFile,
                    const std::vector<double>& rewardWeights) {
  Scenario sc = resolveScenario(scenarioRef, g);
  TimingParams tm = resolveTiming(g);
  TrainingConfig tc;
  if (!trainingFile.empty()) tc = trainingConfigFromJson(loadJsonFile(trainingFile));
  RewardSpec rw;
  if (!rewardWeights.empty()) {
    if (rewardWeights.size() != 2)
      throw std::invalid_argument("--reward expects w0,w1");
    rw.w0 = rewardWeights[0];
    rw.w1 = rewardWeights[1];
  }
  std::uint64_t baseSeed = g.seedSet ? g.seed : sc.seed;

  SelectionFrequencyTable table = selectBlocks(sc, repeats, tc, tm, rw, baseSeed);

  ensureOutDir(g);
  writeSelectionFrequencyCsv(outPath(g, "selection_frequency.csv"), table);
  Json j = toJson(table);
  saveJsonFile(outPath(g, "selection_summary.json"), j);
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composable MAC simulator, block-dependency checker, and "
               "Q-learning experiment harness"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Base RNG seed (overrides scenario seed)")
      ->each([&](const std::string&) { g.seedSet = true; });
  app.add_option("--out", g.outDir, "Output directory for reports");
  app.add_option("--timing", g.timingFile, "Timing parameters JSON file");
  app.add_flag("--trace", g.trace, "Write an event trace (simulate only)");

  std::string configRef, scenarioRef, checkpoint, trainingFile;
  std::vector<std::uint64_t> seeds;
  std::vector<double> rewardWeights;
  int repeats = 20;
  int episodes = 0;
  int sweepSeeds = 3;
  double budget = 0;

  CLI::App* validateCmd = app.add_subcommand("validate", "Check a block config against the dependency rules");
  validateCmd->add_option("config", configRef, "Config JSON path or 'default'")->required();

  CLI::App* enumerateCmd = app.add_subcommand("enumerate", "Count (and optionally dump) the valid config space");
  bool dumpRules = false;
  enumerateCmd->add_flag("--rules", dumpRules, "Print the dependency rules instead");

  CLI::App* simulateCmd = app.add_subcommand("simulate", "Run one simulation");
  simulateCmd->add_option("config", configRef, "Config JSON path or 'default'")->required();
  simulateCmd->add_option("scenario", scenarioRef, "Scenario JSON path, builtin:1..8, ramp:low, ramp:high")->required();

  CLI::App* trainCmd = app.add_subcommand("train", "Train an agent on a scenario");
  trainCmd->add_option("scenario", scenarioRef, "Scenario reference")->required();
  trainCmd->add_option("--training", trainingFile, "TrainingConfig JSON file");
  trainCmd->add_option("--episodes", episodes, "Override episode count");
  trainCmd->add_option("--reward", rewardWeights, "Reward weights w0,w1")->delimiter(',');

  CLI::App* evaluateCmd = app.add_subcommand("evaluate", "Evaluate a trained agent");
  evaluateCmd->add_option("checkpoint", checkpoint, "Agent checkpoint path")->required();
  evaluateCmd->add_option("scenario", scenarioRef, "Scenario reference")->required();
  evaluateCmd->add_option("--seeds", seeds, "Explicit seed list")->delimiter(',');
  evaluateCmd->add_option("--repeats", repeats, "Seed count when --seeds not given");

  CLI::App* compareCmd = app.add_subcommand("compare", "Agent vs fixed-default baseline");
  compareCmd->add_option("checkpoint", checkpoint, "Agent checkpoint path")->required();
  compareCmd->add_option("scenario", scenarioRef, "Scenario reference")->required();
  compareCmd->add_option("--seeds", seeds, "Explicit seed list")->delimiter(',');
  compareCmd->add_option("--repeats", repeats, "Seed count when --seeds not given");

  CLI::App* sweepCmd = app.add_subcommand("sweep", "Simulate every valid config, rank by mean throughput");
  sweepCmd->add_option("scenario", scenarioRef, "Scenario reference")->required();
  sweepCmd->add_option("--seeds", seeds, "Explicit seed list")->delimiter(',');
  sweepCmd->add_option("--seed-count", sweepSeeds, "Seed count when --seeds not given");
  sweepCmd->add_option("--budget", budget, "Override config x seed x seconds cap");

  CLI::App* selectCmd = app.add_subcommand("select-blocks", "Train repeatedly, tally greedy block choices");
  selectCmd->add_option("scenario", scenarioRef, "Scenario reference")->required();
  selectCmd->add_option("--repeats", repeats, "Independent training runs");
  selectCmd->add_option("--training", trainingFile, "TrainingConfig JSON file");
  selectCmd->add_option("--reward", rewardWeights, "Reward weights w0,w1")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (validateCmd->parsed()) return runValidate(configRef);
    if (enumerateCmd->parsed()) return runEnumerate(g, dumpRules);
    if (simulateCmd->parsed()) return runSimulate(g, configRef, scenarioRef);
    if (trainCmd->parsed())
      return runTrain(g, scenarioRef, trainingFile, episodes, rewardWeights);
    if (evaluateCmd->parsed())
      return runEvaluate(g, checkpoint, scenarioRef, seeds, repeats);
    if (compareCmd->parsed())
      return runCompare(g, checkpoint, scenarioRef, seeds, repeats);
    if (sweepCmd->parsed())
      return runSweep(g, scenarioRef, seeds, sweepSeeds, budget);
    if (selectCmd->parsed())
      return runSelectBlocks(g, scenarioRef, repeats, trainingFile, rewardWeights);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
