#include "macblocks/logic.hpp"

#include <stdexcept>

namespace macblocks {

std::vector<std::string> ValidationReport::messages() const {
  std::vector<std::string> out;
  out.reserve(violations.size());
  for (const auto& [rule, msg] : violations) out.push_back(msg);
  return out;
}

const std::vector<DependencyRule>& builtinRules() {
  static const std::vector<DependencyRule> rules = {
      {RuleKind::Strong, "Backoff", "ACK",
       "adaptive backoff needs ACK feedback to drive CW updates",
       [](const BlockConfig& c) {
         return c.backoff == BackoffAlg::Fixed || c.ack != AckMode::None;
       }},
      {RuleKind::MutualExclusion, "Fragmentation", "Aggregation",
       "fragmentation and aggregation cannot both modify the frame size",
       [](const BlockConfig& c) {
         return c.fragmentBytes == 0 || c.aggregateBytes == 0;
       }},
      {RuleKind::Conditional, "NAV", "RTS/CTS",
       "NAV source follows RTS/CTS availability; either source is acceptable",
       [](const BlockConfig&) { return true; }},
  };
  return rules;
}

ValidationReport validate(const BlockConfig& config,
                          const std::vector<DependencyRule>& rules) {
  ValidationReport report;
  for (const std::string& err : structuralErrors(config)) {
    report.valid = false;
    report.violations.emplace_back(nullptr, err);
  }
  if (!report.valid) return report;
  for (const auto& rule : rules) {
    if (rule.check(config)) continue;
    report.valid = false;
    std::string msg;
    switch (rule.kind) {
      case RuleKind::Strong:
        msg = "Strong(" + rule.source + "->" + rule.target + ") violated: ";
        break;
      case RuleKind::Conditional:
        msg = "Conditional(" + rule.source + "<-" + rule.target + ") violated: ";
        break;
      case RuleKind::MutualExclusion:
        msg = "MutualExclusion(" + rule.source + ", " + rule.target + ") violated: ";
        break;
    }
    msg += rule.description + " [" + describeConfig(config) + "]";
    report.violations.emplace_back(&rule, msg);
  }
  return report;
}

ResolvedRuntime resolveRuntime(const BlockConfig& config) {
  ValidationReport report = validate(config, builtinRules());
  if (!report.valid)
    throw std::invalid_argument("resolveRuntime: invalid config: " +
                                report.violations.front().second);
  ResolvedRuntime rt;
  rt.navSource =
      config.rtsCts ? NavSource::RtsCtsDuration : NavSource::FrameDurationField;
  rt.effectiveCwMin = config.cwMin;
  rt.effectiveBackoff = config.backoff;
  if (config.fragmentBytes > 0)
    rt.effectivePayloadBytes = config.fragmentBytes;
  else if (config.aggregateBytes > 0)
    rt.effectivePayloadBytes = config.aggregateBytes;
  else
    rt.effectivePayloadBytes = kDefaultPayloadBytes;
  return rt;
}

std::vector<BlockConfig> enumerateValid(const std::vector<DependencyRule>& rules) {
  std::vector<BlockConfig> out;
  std::vector<int> fragChoices = {0};
  for (int f : kFragSizes) fragChoices.push_back(f);
  for (BackoffAlg backoff : {BackoffAlg::Fixed, BackoffAlg::Beb, BackoffAlg::Eied})
    for (AckMode ack : {AckMode::None, AckMode::Immediate})
      for (int frag : fragChoices)
        for (int agg : {0, kAggPayloadBytes})
          for (bool rts : {false, true})
            for (int cwMin : kCwMinValues)
              for (bool cs : {false, true})
                for (int rate : kDataRatesMbps) {
                  BlockConfig c;
                  c.backoff = backoff;
                  c.ack = ack;
                  c.fragmentBytes = frag;
                  c.aggregateBytes = agg;
                  c.rtsCts = rts;
                  c.cwMin = cwMin;
                  c.carrierSense = cs;
                  c.dataRateMbps = rate;
                  if (validate(c, rules).valid) out.push_back(c);
                }
  return out;
}

const std::vector<BlockConfig>& validActionSpace() {
  static const std::vector<BlockConfig> space = enumerateValid(builtinRules());
  return space;
}

int configIndex(const BlockConfig& config) {
  const auto& space = validActionSpace();
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space[i] == config) return static_cast<int>(i);
  return -1;
}

std::uint64_t actionSpaceFingerprint() {
  static const std::uint64_t fp = [] {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
      }
    };
    for (const auto& c : validActionSpace()) {
      auto [a, b, f, g, r, w, s, d] = c.key();
      for (int v : {a, b, f, g, r, w, s, d}) mix(static_cast<std::uint64_t>(v));
    }
    return h;
  }();
  return fp;
}

Json rulesToJson(const std::vector<DependencyRule>& rules) {
  Json out = Json::array();
  for (const auto& rule : rules) {
    const char* kind = rule.kind == RuleKind::Strong           ? "Strong"
                       : rule.kind == RuleKind::Conditional    ? "Conditional"
                                                               : "MutualExclusion";
    out.push_back(Json{{"kind", kind},
                       {"source", rule.source},
                       {"target", rule.target},
                       {"description", rule.description}});
  }
  return out;
}

}  // namespace macblocks
