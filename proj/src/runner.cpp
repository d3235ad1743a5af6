#include "macblocks/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "macblocks/logic.hpp"
#include "macblocks/rng.hpp"

namespace macblocks {

namespace {

Scenario makeScenario(int nodes, double loadPktPerSec, bool noise) {
  Scenario s;
  s.nodeCount = nodes;
  s.offeredLoadPktPerSec = loadPktPerSec;
  s.noise = noise;
  s.ber = noise ? 1e-4 : 0.0;
  s.durationSec = 10;
  s.seed = 1;
  return s;
}

double meanOf(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

double sampleStddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0;
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / (v.size() - 1));
}

std::ofstream openCsv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

std::vector<Scenario> builtinScenarios() {
  return {
      makeScenario(5, 8, false),    makeScenario(5, 8, true),
      makeScenario(15, 100, false), makeScenario(15, 100, true),
      makeScenario(20, 470, false), makeScenario(20, 470, true),
      makeScenario(50, 470, false), makeScenario(50, 470, true),
  };
}

Scenario lowLoadRampScenario() {
  Scenario s = makeScenario(1, 8, false);
  s.durationSec = 45;
  for (int t = 3; t <= 42; t += 3) s.joinSchedule.push_back({double(t), 1});
  return s;
}

Scenario highLoadRampScenario() {
  Scenario s = makeScenario(25, 470, false);
  s.durationSec = 52;
  for (int t = 2; t <= 50; t += 2) s.joinSchedule.push_back({double(t), 1});
  return s;
}

ComparisonReport compareBaseline(const Scenario& scenario,
                                 const std::vector<std::uint64_t>& seeds,
                                 const DqnAgent& agent,
                                 const TimingParams& timing) {
  if (seeds.empty()) throw std::invalid_argument("compareBaseline: no seeds");
  {
    auto errs = scenarioErrors(scenario);
    if (!errs.empty())
      throw std::invalid_argument("compareBaseline: " + errs.front());
  }

  const TrainingConfig& cfg = agent.config();
  const double epochSec = cfg.simEpochSec;
  const int nEpochs =
      std::max(1, (int)std::ceil(scenario.durationSec / epochSec - 1e-9));
  const BlockConfig armCfgs[2] = {defaultCsmaCaConfig(),
                                  greedyConfig(agent, scenario, timing, {})};

  ComparisonReport report;
  report.seeds = seeds;
  report.epochSec = epochSec;
  report.arms = {ArmResult{"baseline", {}, 0, 0}, ArmResult{"agent", {}, 0, 0}};

  for (std::uint64_t seed : seeds) {
    Scenario base = scenario;
    base.seed = seed;
    for (int armIdx = 0; armIdx < 2; ++armIdx) {
      // Per-seed throughput comes from one uninterrupted full-length run, so
      // queue state never resets mid-scenario. Both arms reuse the seed;
      // identical configs replay the same channel.
      report.arms[armIdx].perSeedMbps.push_back(
          simulate(armCfgs[armIdx], base, timing).avgThroughputMbps);
      // The time-resolved curve samples the same arm config in epoch-sized
      // reruns; slice totals can drift a hair from the full run where a
      // packet straddles a slice boundary.
      for (int e = 0; e < nEpochs; ++e) {
        double tStart = e * epochSec;
        double dur = std::min(epochSec, scenario.durationSec - tStart);
        Scenario epoch = epochSlice(base, dur, tStart, 0x434D50, e);
        SimStats stats = simulate(armCfgs[armIdx], epoch, timing);
        report.curve.push_back({tStart, report.arms[armIdx].arm, seed,
                                stats.avgThroughputMbps});
      }
    }
  }

  for (ArmResult& arm : report.arms) {
    arm.meanMbps = meanOf(arm.perSeedMbps);
    arm.stddevMbps = sampleStddev(arm.perSeedMbps, arm.meanMbps);
  }
  return report;
}

SelectionFrequencyTable selectBlocks(const Scenario& scenario, int repeats,
                                     const TrainingConfig& training,
                                     const TimingParams& timing,
                                     const RewardSpec& reward,
                                     std::uint64_t baseSeed) {
  if (repeats < 1) throw std::invalid_argument("selectBlocks: repeats < 1");

  std::map<std::string, int> byKey;
  std::map<std::string, BlockConfig> keyToConfig;
  std::vector<BlockConfig> picks;
  for (int r = 0; r < repeats; ++r) {
    Scenario sc = scenario;
    sc.seed = mixSeed(scenario.seed, 0x524550, r);
    TrainResult tr =
        trainAgent(sc, training, timing, reward, mixSeed(baseSeed, 0x53454C, r));
    BlockConfig pick = greedyConfig(tr.agent, sc, timing, reward);
    picks.push_back(pick);
    std::string k = describeConfig(pick);
    byKey[k] += 1;
    keyToConfig.emplace(k, pick);
  }

  SelectionFrequencyTable table;
  table.repeats = repeats;

  auto count = [&](auto pred) {
    int n = 0;
    for (const BlockConfig& c : picks)
      if (pred(c)) ++n;
    return n;
  };
  auto addRow = [&](const char* block, const std::string& value, int n) {
    table.blockCounts.emplace_back(block, value, n);
  };

  for (BackoffAlg a : {BackoffAlg::Fixed, BackoffAlg::Beb, BackoffAlg::Eied})
    addRow("backoff", toString(a),
           count([&](const BlockConfig& c) { return c.backoff == a; }));
  for (AckMode a : {AckMode::None, AckMode::Immediate})
    addRow("ack", toString(a),
           count([&](const BlockConfig& c) { return c.ack == a; }));
  for (int f : {0, 200, 500, 1000})
    addRow("fragmentBytes", std::to_string(f),
           count([&](const BlockConfig& c) { return c.fragmentBytes == f; }));
  for (int a : {0, kAggPayloadBytes})
    addRow("aggregateBytes", std::to_string(a),
           count([&](const BlockConfig& c) { return c.aggregateBytes == a; }));
  for (bool b : {false, true})
    addRow("rtsCts", b ? "on" : "off",
           count([&](const BlockConfig& c) { return c.rtsCts == b; }));
  for (int w : kCwMinValues)
    addRow("cwMin", std::to_string(w),
           count([&](const BlockConfig& c) { return c.cwMin == w; }));
  for (bool b : {false, true})
    addRow("carrierSense", b ? "on" : "off",
           count([&](const BlockConfig& c) { return c.carrierSense == b; }));
  for (int r : kDataRatesMbps)
    addRow("dataRateMbps", std::to_string(r),
           count([&](const BlockConfig& c) { return c.dataRateMbps == r; }));

  for (const auto& [k, n] : byKey)
    table.configCounts.emplace_back(keyToConfig.at(k), n);
  std::sort(table.configCounts.begin(), table.configCounts.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first.key() < b.first.key();
            });
  return table;
}

std::vector<SweepRow> exhaustiveSweep(const Scenario& scenario,
                                      const std::vector<std::uint64_t>& seeds,
                                      const TimingParams& timing,
                                      const SweepOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("exhaustiveSweep: no seeds");
  {
    auto errs = scenarioErrors(scenario);
    if (!errs.empty())
      throw std::invalid_argument("exhaustiveSweep: " + errs.front());
  }
  const auto& space = validActionSpace();
  double cost = (double)space.size() * seeds.size() * scenario.durationSec;
  if (cost > options.budget) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "sweep cost %.0f config-seed-seconds exceeds budget %.0f "
                  "(%zu configs x %zu seeds x %gs)",
                  cost, options.budget, space.size(), seeds.size(),
                  scenario.durationSec);
    throw BudgetExceeded(buf);
  }

  std::vector<SweepRow> rows;
  rows.reserve(space.size());
  for (const BlockConfig& cfg : space) {
    SweepRow row;
    row.config = cfg;
    for (std::uint64_t seed : seeds) {
      Scenario s = scenario;
      s.seed = seed;
      row.perSeedMbps.push_back(simulate(cfg, s, timing).avgThroughputMbps);
    }
    row.meanMbps = meanOf(row.perSeedMbps);
    row.stddevMbps = sampleStddev(row.perSeedMbps, row.meanMbps);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.meanMbps != b.meanMbps) return a.meanMbps > b.meanMbps;
    return a.config.key() < b.config.key();
  });
  return rows;
}

TrainResult trainAgent(const Scenario& scenario, const TrainingConfig& training,
                       const TimingParams& timing, const RewardSpec& reward,
                       std::uint64_t agentSeed) {
  TrainResult result{DqnAgent(training, agentSeed), {}};
  for (int ep = 0; ep < training.episodes; ++ep)
    result.episodes.push_back(
        runEpisode(result.agent, scenario, timing, reward, ep));
  return result;
}

std::string formatNum(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 6);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

void writeThroughputCurveCsv(const std::string& path,
                             const std::vector<CurvePoint>& curve) {
  std::ofstream out = openCsv(path);
  out << "time_sec,arm,seed,throughput_mbps\n";
  for (const CurvePoint& p : curve)
    out << formatNum(p.timeSec) << ',' << p.arm << ',' << p.seed << ','
        << formatNum(p.throughputMbps) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

void writeSelectionFrequencyCsv(const std::string& path,
                                const SelectionFrequencyTable& table) {
  std::ofstream out = openCsv(path);
  out << "block,value,count\n";
  for (const auto& [block, value, count] : table.blockCounts)
    out << block << ',' << value << ',' << count << '\n';
  if (!out) throw IoError("write failed: " + path);
}

void writeSweepCsv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out = openCsv(path);
  out << "rank,backoff,ack,fragment_bytes,aggregate_bytes,rts_cts,cw_min,"
         "carrier_sense,data_rate_mbps,mean_mbps,stddev_mbps\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BlockConfig& c = rows[i].config;
    out << (i + 1) << ',' << toString(c.backoff) << ',' << toString(c.ack)
        << ',' << c.fragmentBytes << ',' << c.aggregateBytes << ','
        << (c.rtsCts ? "on" : "off") << ',' << c.cwMin << ','
        << (c.carrierSense ? "on" : "off") << ',' << c.dataRateMbps << ','
        << formatNum(rows[i].meanMbps) << ',' << formatNum(rows[i].stddevMbps)
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

Json toJson(const ComparisonReport& report) {
  Json j;
  j["epochSec"] = report.epochSec;
  j["seeds"] = report.seeds;
  Json arms = Json::array();
  for (const ArmResult& arm : report.arms) {
    Json a;
    a["arm"] = arm.arm;
    a["meanMbps"] = arm.meanMbps;
    a["stddevMbps"] = arm.stddevMbps;
    a["perSeedMbps"] = arm.perSeedMbps;
    arms.push_back(std::move(a));
  }
  j["arms"] = std::move(arms);
  return j;
}

Json toJson(const SelectionFrequencyTable& table) {
  Json j;
  j["repeats"] = table.repeats;
  Json blocks = Json::array();
  for (const auto& [block, value, count] : table.blockCounts) {
    Json row;
    row["block"] = block;
    row["value"] = value;
    row["count"] = count;
    blocks.push_back(std::move(row));
  }
  j["blocks"] = std::move(blocks);
  Json configs = Json::array();
  for (const auto& [cfg, count] : table.configCounts) {
    Json row;
    row["config"] = toJson(cfg);
    row["count"] = count;
    configs.push_back(std::move(row));
  }
  j["configs"] = std::move(configs);
  return j;
}

Json sweepToJson(const std::vector<SweepRow>& rows, std::size_t topK) {
  Json j;
  j["configCount"] = rows.size();
  Json top = Json::array();
  for (std::size_t i = 0; i < rows.size() && i < topK; ++i) {
    Json row;
    row["rank"] = i + 1;
    row["config"] = toJson(rows[i].config);
    row["meanMbps"] = rows[i].meanMbps;
    row["stddevMbps"] = rows[i].stddevMbps;
    row["perSeedMbps"] = rows[i].perSeedMbps;
    top.push_back(std::move(row));
  }
  j["rows"] = std::move(top);
  return j;
}

}  // namespace macblocks
