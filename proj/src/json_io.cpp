#include "macblocks/json_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace macblocks {

namespace {

BackoffAlg backoffFromString(const std::string& s) {
  if (s == "None") return BackoffAlg::Fixed;
  if (s == "BEB") return BackoffAlg::Beb;
  if (s == "EIED") return BackoffAlg::Eied;
  throw std::invalid_argument("unknown backoff algorithm: " + s);
}

AckMode ackFromString(const std::string& s) {
  if (s == "NoAck") return AckMode::None;
  if (s == "ImmediateAck") return AckMode::Immediate;
  throw std::invalid_argument("unknown ack mode: " + s);
}

// Walks an object's keys against a handler table; any key without a handler is an error.
class FieldReader {
 public:
  explicit FieldReader(const Json& j, const char* what) : j_(j), what_(what) {
    if (!j.is_object())
      throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  }

  template <typename T>
  void field(const char* name, T& out) {
    known_.insert(name);
    auto it = j_.find(name);
    if (it == j_.end()) return;
    try {
      out = it->get<T>();
    } catch (const Json::exception&) {
      throw std::invalid_argument(std::string(what_) + "." + name + ": wrong type");
    }
  }

  void field(const char* name, BackoffAlg& out) {
    std::string s = toString(out);
    field(name, s);
    out = backoffFromString(s);
  }

  void field(const char* name, AckMode& out) {
    std::string s = toString(out);
    field(name, s);
    out = ackFromString(s);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!known_.count(it.key()))
        throw std::invalid_argument(std::string(what_) + ": unknown key '" + it.key() + "'");
  }

 private:
  const Json& j_;
  const char* what_;
  std::set<std::string> known_;
};

}  // namespace

Json toJson(const BlockConfig& c) {
  Json j;
  j["backoff"] = toString(c.backoff);
  j["ack"] = toString(c.ack);
  j["fragmentBytes"] = c.fragmentBytes;
  j["aggregateBytes"] = c.aggregateBytes;
  j["rtsCts"] = c.rtsCts;
  j["cwMin"] = c.cwMin;
  j["carrierSense"] = c.carrierSense;
  j["dataRateMbps"] = c.dataRateMbps;
  return j;
}

BlockConfig blockConfigFromJson(const Json& j) {
  BlockConfig c = defaultCsmaCaConfig();
  FieldReader r(j, "config");
  r.field("backoff", c.backoff);
  r.field("ack", c.ack);
  r.field("fragmentBytes", c.fragmentBytes);
  r.field("aggregateBytes", c.aggregateBytes);
  r.field("rtsCts", c.rtsCts);
  r.field("cwMin", c.cwMin);
  r.field("carrierSense", c.carrierSense);
  r.field("dataRateMbps", c.dataRateMbps);
  r.finish();
  return c;
}

Json toJson(const Scenario& s) {
  Json j;
  j["nodeCount"] = s.nodeCount;
  j["offeredLoadPktPerSec"] = s.offeredLoadPktPerSec;
  j["noise"] = s.noise;
  j["ber"] = s.ber;
  j["areaWidthMeters"] = s.areaWidthMeters;
  j["areaHeightMeters"] = s.areaHeightMeters;
  j["radioRangeMeters"] = s.radioRangeMeters;
  j["durationSec"] = s.durationSec;
  j["seed"] = s.seed;
  Json joins = Json::array();
  for (const auto& join : s.joinSchedule)
    joins.push_back(Json{{"timeSec", join.timeSec}, {"count", join.count}});
  j["joinSchedule"] = joins;
  return j;
}

Scenario scenarioFromJson(const Json& j) {
  Scenario s;
  FieldReader r(j, "scenario");
  r.field("nodeCount", s.nodeCount);
  r.field("offeredLoadPktPerSec", s.offeredLoadPktPerSec);
  r.field("noise", s.noise);
  r.field("ber", s.ber);
  r.field("areaWidthMeters", s.areaWidthMeters);
  r.field("areaHeightMeters", s.areaHeightMeters);
  r.field("radioRangeMeters", s.radioRangeMeters);
  r.field("durationSec", s.durationSec);
  r.field("seed", s.seed);
  Json joins = Json::array();
  r.field("joinSchedule", joins);
  r.finish();
  if (!joins.is_array()) throw std::invalid_argument("scenario.joinSchedule: wrong type");
  for (const auto& item : joins) {
    NodeJoin join;
    FieldReader jr(item, "joinSchedule entry");
    jr.field("timeSec", join.timeSec);
    jr.field("count", join.count);
    jr.finish();
    s.joinSchedule.push_back(join);
  }
  return s;
}

Json toJson(const TimingParams& t) {
  Json j;
  j["slotSec"] = t.slotSec;
  j["sifsSec"] = t.sifsSec;
  j["difsSec"] = t.difsSec;
  j["phyHeaderSec"] = t.phyHeaderSec;
  j["ackBytes"] = t.ackBytes;
  j["rtsBytes"] = t.rtsBytes;
  j["ctsBytes"] = t.ctsBytes;
  j["macHeaderBytes"] = t.macHeaderBytes;
  j["ackTimeoutSec"] = t.ackTimeoutSec;
  j["retryLimit"] = t.retryLimit;
  j["txPowerW"] = t.txPowerW;
  j["rxPowerW"] = t.rxPowerW;
  j["idlePowerW"] = t.idlePowerW;
  return j;
}

TimingParams timingParamsFromJson(const Json& j) {
  TimingParams t;
  FieldReader r(j, "timing");
  r.field("slotSec", t.slotSec);
  r.field("sifsSec", t.sifsSec);
  r.field("difsSec", t.difsSec);
  r.field("phyHeaderSec", t.phyHeaderSec);
  r.field("ackBytes", t.ackBytes);
  r.field("rtsBytes", t.rtsBytes);
  r.field("ctsBytes", t.ctsBytes);
  r.field("macHeaderBytes", t.macHeaderBytes);
  r.field("ackTimeoutSec", t.ackTimeoutSec);
  r.field("retryLimit", t.retryLimit);
  r.field("txPowerW", t.txPowerW);
  r.field("rxPowerW", t.rxPowerW);
  r.field("idlePowerW", t.idlePowerW);
  r.finish();
  return t;
}

Json toJson(const TrainingConfig& t) {
  Json j;
  j["gamma"] = t.gamma;
  j["historyLen"] = t.historyLen;
  j["qLearningRate"] = t.qLearningRate;
  j["sgdStepSize"] = t.sgdStepSize;
  j["epsilonStart"] = t.epsilonStart;
  j["epsilonEnd"] = t.epsilonEnd;
  j["epsilonDecaySteps"] = t.epsilonDecaySteps;
  j["replayCapacity"] = t.replayCapacity;
  j["batchSize"] = t.batchSize;
  j["targetSyncInterval"] = t.targetSyncInterval;
  j["stepsPerEpisode"] = t.stepsPerEpisode;
  j["simEpochSec"] = t.simEpochSec;
  j["episodes"] = t.episodes;
  j["rewardScale"] = t.rewardScale;
  return j;
}

TrainingConfig trainingConfigFromJson(const Json& j) {
  TrainingConfig t;
  FieldReader r(j, "training");
  r.field("gamma", t.gamma);
  r.field("historyLen", t.historyLen);
  r.field("qLearningRate", t.qLearningRate);
  r.field("sgdStepSize", t.sgdStepSize);
  r.field("epsilonStart", t.epsilonStart);
  r.field("epsilonEnd", t.epsilonEnd);
  r.field("epsilonDecaySteps", t.epsilonDecaySteps);
  r.field("replayCapacity", t.replayCapacity);
  r.field("batchSize", t.batchSize);
  r.field("targetSyncInterval", t.targetSyncInterval);
  r.field("stepsPerEpisode", t.stepsPerEpisode);
  r.field("simEpochSec", t.simEpochSec);
  r.field("episodes", t.episodes);
  r.field("rewardScale", t.rewardScale);
  r.finish();
  return t;
}

Json toJson(const RewardSpec& r) {
  return Json{{"w0", r.w0}, {"w1", r.w1}};
}

RewardSpec rewardSpecFromJson(const Json& j) {
  RewardSpec spec;
  FieldReader r(j, "reward");
  r.field("w0", spec.w0);
  r.field("w1", spec.w1);
  r.finish();
  return spec;
}

Json toJson(const SimStats& s) {
  Json j;
  j["avgThroughputMbps"] = s.avgThroughputMbps;
  j["deliveredBits"] = s.deliveredBits;
  j["generatedBits"] = s.generatedBits;
  j["collisions"] = s.collisions;
  j["retransmissions"] = s.retransmissions;
  j["drops"] = s.drops;
  j["controlAirtimeSec"] = s.controlAirtimeSec;
  j["dataAirtimeSec"] = s.dataAirtimeSec;
  j["idleSec"] = s.idleSec;
  j["energyJoules"] = s.energyJoules;
  return j;
}

Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

void saveJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace macblocks
