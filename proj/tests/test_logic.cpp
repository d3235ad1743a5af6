#include <doctest.h>

#include <set>
#include <vector>

#include "macblocks/config.hpp"
#include "macblocks/logic.hpp"

using namespace macblocks;

namespace {

BlockConfig make(BackoffAlg bo, AckMode ack, int frag, int agg, bool rts,
                 int cw, bool cs, int rate) {
  BlockConfig c;
  c.backoff = bo;
  c.ack = ack;
  c.fragmentBytes = frag;
  c.aggregateBytes = agg;
  c.rtsCts = rts;
  c.cwMin = cw;
  c.carrierSense = cs;
  c.dataRateMbps = rate;
  return c;
}

}  // namespace

TEST_CASE("hand-written validity table") {
  struct Case {
    BlockConfig config;
    bool valid;
    const char* why;
  };
  const Case table[] = {
      {make(BackoffAlg::Beb, AckMode::Immediate, 0, 0, false, 15, true, 54),
       true, "CSMA/CA baseline"},
      {make(BackoffAlg::Beb, AckMode::None, 0, 0, false, 15, true, 54), false,
       "BEB without ACK"},
      {make(BackoffAlg::Eied, AckMode::None, 0, 0, false, 15, true, 54), false,
       "EIED without ACK"},
      {make(BackoffAlg::Fixed, AckMode::None, 0, 0, false, 15, false, 54),
       true, "fixed window never needs ACK feedback"},
      {make(BackoffAlg::Fixed, AckMode::Immediate, 0, 0, false, 31, true, 24),
       true, "fixed window with ACK"},
      {make(BackoffAlg::Eied, AckMode::Immediate, 0, 0, false, 1023, true, 6),
       true, "EIED with ACK at extreme cw/rate"},
      {make(BackoffAlg::Beb, AckMode::Immediate, 200, kAggPayloadBytes, false,
            15, true, 54),
       false, "fragmentation and aggregation together"},
      {make(BackoffAlg::Beb, AckMode::Immediate, 1000, 0, false, 15, true, 54),
       true, "fragmentation alone"},
      {make(BackoffAlg::Beb, AckMode::Immediate, 0, kAggPayloadBytes, false,
            15, true, 54),
       true, "aggregation alone"},
      {make(BackoffAlg::Beb, AckMode::Immediate, 0, 0, true, 15, true, 54),
       true, "RTS/CTS on"},
      {make(BackoffAlg::Fixed, AckMode::None, 0, kAggPayloadBytes, true, 63,
            false, 12),
       true, "RTS/CTS + aggregation, no carrier sense"},
      {make(BackoffAlg::Eied, AckMode::None, 500, kAggPayloadBytes, false, 15,
            true, 54),
       false, "two violations at once"},
      {make(BackoffAlg::Beb, AckMode::Immediate, 0, 0, false, 16, true, 54),
       false, "cwMin outside domain"},
      {make(BackoffAlg::Beb, AckMode::Immediate, 0, 0, false, 15, true, 11),
       false, "data rate outside domain"},
  };

  const auto& rules = builtinRules();
  for (const Case& c : table) {
    ValidationReport report = validate(c.config, rules);
    INFO(c.why, ": ", describeConfig(c.config));
    CHECK(report.valid == c.valid);
    if (!c.valid) CHECK_FALSE(report.messages().empty());
  }
}

TEST_CASE("double violation reports both rules") {
  BlockConfig c = make(BackoffAlg::Eied, AckMode::None, 500, kAggPayloadBytes,
                       false, 15, true, 54);
  ValidationReport report = validate(c, builtinRules());
  CHECK_FALSE(report.valid);
  CHECK(report.violations.size() == 2);
}

TEST_CASE("builtin rules cover the three dependency kinds") {
  const auto& rules = builtinRules();
  REQUIRE(rules.size() == 3);
  std::set<RuleKind> kinds;
  for (const auto& r : rules) kinds.insert(r.kind);
  CHECK(kinds.count(RuleKind::Strong) == 1);
  CHECK(kinds.count(RuleKind::MutualExclusion) == 1);
  CHECK(kinds.count(RuleKind::Conditional) == 1);
}

TEST_CASE("NAV resolution follows the RTS/CTS block") {
  BlockConfig c = defaultCsmaCaConfig();
  c.rtsCts = true;
  CHECK(resolveRuntime(c).navSource == NavSource::RtsCtsDuration);
  c.rtsCts = false;
  CHECK(resolveRuntime(c).navSource == NavSource::FrameDurationField);
}

TEST_CASE("runtime resolution picks the effective payload") {
  BlockConfig c = defaultCsmaCaConfig();
  CHECK(resolveRuntime(c).effectivePayloadBytes == kDefaultPayloadBytes);
  c.fragmentBytes = 500;
  CHECK(resolveRuntime(c).effectivePayloadBytes == 500);
  c.fragmentBytes = 0;
  c.aggregateBytes = kAggPayloadBytes;
  CHECK(resolveRuntime(c).effectivePayloadBytes == kAggPayloadBytes);
}

TEST_CASE("runtime resolution rejects invalid configs") {
  BlockConfig c = defaultCsmaCaConfig();
  c.ack = AckMode::None;  // BEB without ACK
  CHECK_THROWS_AS(resolveRuntime(c), std::invalid_argument);
}

TEST_CASE("unconstrained enumeration covers the full cross product") {
  CHECK(enumerateValid({}).size() == 9408);
}

TEST_CASE("enumeration agrees with a brute-force filter") {
  // Independent oracle: walk the eight domains directly and apply the two
  // constraints as plain boolean expressions.
  std::vector<BlockConfig> expected;
  for (BackoffAlg bo : {BackoffAlg::Fixed, BackoffAlg::Beb, BackoffAlg::Eied})
    for (AckMode ack : {AckMode::None, AckMode::Immediate})
      for (int frag : {0, 200, 500, 1000})
        for (int agg : {0, kAggPayloadBytes})
          for (int rts = 0; rts < 2; ++rts)
            for (int cw : kCwMinValues)
              for (int cs = 0; cs < 2; ++cs)
                for (int rate : kDataRatesMbps) {
                  bool adaptiveNeedsAck =
                      (bo == BackoffAlg::Fixed) || (ack == AckMode::Immediate);
                  bool frameSizeExclusive = frag == 0 || agg == 0;
                  if (adaptiveNeedsAck && frameSizeExclusive)
                    expected.push_back(
                        make(bo, ack, frag, agg, rts != 0, cw, cs != 0, rate));
                }

  const auto& got = enumerateValid(builtinRules());
  REQUIRE(got.size() == expected.size());
  CHECK(got.size() == 3920);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);
}

TEST_CASE("every enumerated config validates") {
  const auto& rules = builtinRules();
  for (const BlockConfig& c : enumerateValid(rules))
    CHECK(validate(c, rules).valid);
}

TEST_CASE("configIndex inverts the enumeration") {
  const auto& space = validActionSpace();
  CHECK(configIndex(space.front()) == 0);
  CHECK(configIndex(space.back()) == static_cast<int>(space.size()) - 1);
  CHECK(configIndex(space[1234]) == 1234);
  BlockConfig invalid = defaultCsmaCaConfig();
  invalid.ack = AckMode::None;
  CHECK(configIndex(invalid) == -1);
}

TEST_CASE("action space fingerprint is stable") {
  CHECK(actionSpaceFingerprint() == actionSpaceFingerprint());
  CHECK(actionSpaceFingerprint() != 0);
}

TEST_CASE("rulesToJson lists every rule with its kind") {
  Json j = rulesToJson(builtinRules());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  for (const auto& r : j) {
    CHECK(r.contains("kind"));
    CHECK(r.contains("source"));
    CHECK(r.contains("target"));
    CHECK(r.contains("description"));
  }
}
