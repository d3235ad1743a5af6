#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "macblocks/config.hpp"
#include "macblocks/json_io.hpp"

namespace macblocks {

enum class RuleKind { Strong, Conditional, MutualExclusion };

struct DependencyRule {
  RuleKind kind;
  std::string source;
  std::string target;
  std::string description;
  // Returns true when the config satisfies the rule.
  std::function<bool(const BlockConfig&)> check;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::pair<const DependencyRule*, std::string>> violations;
  std::vector<std::string> messages() const;
};

enum class NavSource { RtsCtsDuration, FrameDurationField };

struct ResolvedRuntime {
  NavSource navSource = NavSource::FrameDurationField;
  int effectiveCwMin = 15;
  BackoffAlg effectiveBackoff = BackoffAlg::Beb;
  int effectivePayloadBytes = kDefaultPayloadBytes;
};

const std::vector<DependencyRule>& builtinRules();

ValidationReport validate(const BlockConfig& config,
                          const std::vector<DependencyRule>& rules);

ResolvedRuntime resolveRuntime(const BlockConfig& config);

std::vector<BlockConfig> enumerateValid(const std::vector<DependencyRule>& rules);

// Index of config within enumerateValid(builtinRules()); -1 if absent.
int configIndex(const BlockConfig& config);

const std::vector<BlockConfig>& validActionSpace();

// Stable FNV-1a hash over the ordered keys of the valid action space; guards
// checkpoints against being replayed into a different action enumeration.
std::uint64_t actionSpaceFingerprint();

Json rulesToJson(const std::vector<DependencyRule>& rules);

}  // namespace macblocks
