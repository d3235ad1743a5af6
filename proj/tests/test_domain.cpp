#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "macblocks/config.hpp"
#include "macblocks/errors.hpp"
#include "macblocks/json_io.hpp"
#include "macblocks/logic.hpp"
#include "macblocks/scenario.hpp"

using namespace macblocks;

TEST_CASE("default config matches the CSMA/CA baseline") {
  BlockConfig c = defaultCsmaCaConfig();
  CHECK(c.backoff == BackoffAlg::Beb);
  CHECK(c.ack == AckMode::Immediate);
  CHECK(c.fragmentBytes == 0);
  CHECK(c.aggregateBytes == 0);
  CHECK_FALSE(c.rtsCts);
  CHECK(c.cwMin == 15);
  CHECK(c.carrierSense);
  CHECK(c.dataRateMbps == 54);
  CHECK(validate(c, builtinRules()).valid);
}

TEST_CASE("structural errors catch out-of-domain values") {
  BlockConfig c = defaultCsmaCaConfig();
  CHECK(structuralErrors(c).empty());

  c.fragmentBytes = 300;
  CHECK(structuralErrors(c).size() == 1);
  c.fragmentBytes = 0;

  c.cwMin = 16;
  CHECK_FALSE(structuralErrors(c).empty());
  c.cwMin = 15;

  c.dataRateMbps = 11;
  CHECK_FALSE(structuralErrors(c).empty());
  c.dataRateMbps = 54;

  c.aggregateBytes = 1500;
  CHECK_FALSE(structuralErrors(c).empty());
}

TEST_CASE("structural errors do not enforce inter-block rules") {
  BlockConfig c = defaultCsmaCaConfig();
  c.ack = AckMode::None;  // adaptive backoff without ACK: a rule violation,
  CHECK(structuralErrors(c).empty());  // not a domain violation
  c.fragmentBytes = 500;
  c.aggregateBytes = kAggPayloadBytes;
  CHECK(structuralErrors(c).empty());
}

TEST_CASE("encodeConfig produces a 29-dim one-hot stack") {
  auto v = encodeConfig(defaultCsmaCaConfig());
  REQUIRE(v.size() == kEncodingDim);
  int ones = 0;
  for (double x : v) {
    CHECK((x == 0.0 || x == 1.0));
    if (x == 1.0) ones++;
  }
  CHECK(ones == 8);
}

TEST_CASE("encodeConfig flips exactly one group between fragment sizes") {
  BlockConfig a = defaultCsmaCaConfig();
  BlockConfig b = a;
  a.fragmentBytes = 500;
  b.fragmentBytes = 1000;
  auto va = encodeConfig(a), vb = encodeConfig(b);
  int diff = 0;
  for (std::size_t i = 0; i < va.size(); ++i)
    if (va[i] != vb[i]) diff++;
  CHECK(diff == 2);
}

TEST_CASE("encodeConfig is injective over the valid space") {
  std::set<std::vector<double>> seen;
  for (const BlockConfig& c : enumerateValid(builtinRules()))
    seen.insert(encodeConfig(c));
  CHECK(seen.size() == enumerateValid(builtinRules()).size());
}

TEST_CASE("decodeConfig inverts encodeConfig") {
  for (const BlockConfig& c : enumerateValid(builtinRules())) {
    CHECK(decodeConfig(encodeConfig(c)) == c);
  }
  CHECK_THROWS_AS(decodeConfig(std::vector<double>(28, 0.0)), std::invalid_argument);
  auto v = encodeConfig(defaultCsmaCaConfig());
  v[0] = 1.0;
  v[1] = 1.0;  // two hot entries in the backoff group
  CHECK_THROWS_AS(decodeConfig(v), std::invalid_argument);
}

TEST_CASE("encodeConfig rejects malformed configs") {
  BlockConfig c = defaultCsmaCaConfig();
  c.cwMin = 99;
  CHECK_THROWS_AS(encodeConfig(c), std::invalid_argument);
}

TEST_CASE("scenario invariants") {
  Scenario s;
  s.offeredLoadPktPerSec = 10;
  CHECK(scenarioErrors(s).empty());

  SUBCASE("noise and ber must agree") {
    s.noise = true;
    s.ber = 0;
    CHECK_FALSE(scenarioErrors(s).empty());
    s.ber = 1e-4;
    CHECK(scenarioErrors(s).empty());
    s.noise = false;
    CHECK_FALSE(scenarioErrors(s).empty());
  }
  SUBCASE("negative load rejected") {
    s.offeredLoadPktPerSec = -1;
    CHECK_FALSE(scenarioErrors(s).empty());
  }
  SUBCASE("duration must be positive") {
    s.durationSec = 0;
    CHECK_FALSE(scenarioErrors(s).empty());
  }
  SUBCASE("join schedule must be sorted with positive counts") {
    s.joinSchedule = {{2.0, 1}, {1.0, 1}};
    CHECK_FALSE(scenarioErrors(s).empty());
    s.joinSchedule = {{1.0, 0}};
    CHECK_FALSE(scenarioErrors(s).empty());
    s.joinSchedule = {{1.0, 1}, {2.0, 3}};
    CHECK(scenarioErrors(s).empty());
  }
}

TEST_CASE("block config JSON round-trip") {
  BlockConfig c;
  c.backoff = BackoffAlg::Eied;
  c.ack = AckMode::Immediate;
  c.fragmentBytes = 200;
  c.rtsCts = true;
  c.cwMin = 255;
  c.carrierSense = true;
  c.dataRateMbps = 12;
  CHECK(blockConfigFromJson(toJson(c)) == c);
}

TEST_CASE("block config JSON uses the domain spellings") {
  Json j = toJson(defaultCsmaCaConfig());
  CHECK(j["backoff"] == "BEB");
  CHECK(j["ack"] == "ImmediateAck");
  BlockConfig c;
  c.backoff = BackoffAlg::Fixed;
  c.ack = AckMode::None;
  Json k = toJson(c);
  CHECK(k["backoff"] == "None");
  CHECK(k["ack"] == "NoAck");
}

TEST_CASE("missing JSON keys fall back to the CSMA/CA defaults") {
  BlockConfig c = blockConfigFromJson(Json::object());
  CHECK(c == defaultCsmaCaConfig());
  Json j;
  j["ack"] = "NoAck";
  j["backoff"] = "None";
  BlockConfig d = blockConfigFromJson(j);
  CHECK(d.ack == AckMode::None);
  CHECK(d.cwMin == 15);
  CHECK(d.dataRateMbps == 54);
}

TEST_CASE("unknown JSON keys are rejected") {
  Json j = toJson(defaultCsmaCaConfig());
  j["cwmax"] = 1023;
  CHECK_THROWS_AS(blockConfigFromJson(j), std::invalid_argument);

  Json s = toJson(Scenario{});
  s["nodes"] = 5;
  CHECK_THROWS_AS(scenarioFromJson(s), std::invalid_argument);
}

TEST_CASE("JSON type mismatches are rejected") {
  Json j = toJson(defaultCsmaCaConfig());
  j["cwMin"] = "fifteen";
  CHECK_THROWS_AS(blockConfigFromJson(j), std::invalid_argument);
  Json k = toJson(defaultCsmaCaConfig());
  k["backoff"] = "XYZ";
  CHECK_THROWS_AS(blockConfigFromJson(k), std::invalid_argument);
}

TEST_CASE("scenario JSON round-trip including join schedule") {
  Scenario s;
  s.nodeCount = 3;
  s.offeredLoadPktPerSec = 42.5;
  s.noise = true;
  s.ber = 1e-4;
  s.durationSec = 7.25;
  s.seed = 99;
  s.joinSchedule = {{3.0, 1}, {6.0, 2}};
  Scenario t = scenarioFromJson(toJson(s));
  CHECK(t == s);
}

TEST_CASE("timing and training JSON round-trips") {
  TimingParams t;
  t.slotSec = 9e-6;
  t.retryLimit = 4;
  t.macHeaderBytes = 28;
  CHECK(timingParamsFromJson(toJson(t)) == t);

  TrainingConfig tc;
  tc.gamma = 0.9;
  tc.episodes = 3;
  tc.epsilonDecaySteps = 77;
  TrainingConfig rt = trainingConfigFromJson(toJson(tc));
  CHECK(rt.gamma == tc.gamma);
  CHECK(rt.episodes == tc.episodes);
  CHECK(rt.epsilonDecaySteps == tc.epsilonDecaySteps);

  RewardSpec rw;
  rw.w0 = 0.5;
  rw.w1 = 2.0;
  RewardSpec rr = rewardSpecFromJson(toJson(rw));
  CHECK(rr.w0 == rw.w0);
  CHECK(rr.w1 == rw.w1);
}

TEST_CASE("training config invariants") {
  TrainingConfig tc;
  CHECK(trainingConfigErrors(tc).empty());
  tc.gamma = 1.0;
  CHECK_FALSE(trainingConfigErrors(tc).empty());
  tc.gamma = 0.8;
  tc.historyLen = 0;
  CHECK_FALSE(trainingConfigErrors(tc).empty());
  tc.historyLen = 15;
  tc.batchSize = 0;
  CHECK_FALSE(trainingConfigErrors(tc).empty());
}

TEST_CASE("file loading distinguishes missing files from bad content") {
  CHECK_THROWS_AS(loadJsonFile("/nonexistent/nowhere.json"), IoError);

  std::string path = "bad_content.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(loadJsonFile(path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("saveJsonFile round-trips through loadJsonFile") {
  std::string path = "roundtrip_check.json";
  Json j = toJson(defaultCsmaCaConfig());
  saveJsonFile(path, j);
  CHECK(loadJsonFile(path) == j);
  std::remove(path.c_str());
  CHECK_THROWS_AS(saveJsonFile("/nonexistent/dir/x.json", j), IoError);
}
