#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace macblocks {

// Contention-window evolution algorithm. Fixed keeps the window at cwMin.
enum class BackoffAlg { Fixed, Beb, Eied };

enum class AckMode { None, Immediate };

// MAC payload a node generates per packet and the frame payload used when no
// frame-size modifier is active.
inline constexpr int kDefaultPayloadBytes = 1500;
inline constexpr int kAggPayloadBytes = 2000;
inline constexpr int kCwMax = 1023;

inline constexpr std::array<int, 3> kFragSizes = {200, 500, 1000};
inline constexpr std::array<int, 7> kCwMinValues = {15, 31, 63, 127, 255, 511, 1023};
inline constexpr std::array<int, 7> kDataRatesMbps = {6, 9, 12, 24, 36, 48, 54};

// One selectable MAC protocol: every field is an independently chosen
// building block. fragmentBytes/aggregate use 0 for "block not selected".
struct BlockConfig {
  BackoffAlg backoff = BackoffAlg::Fixed;
  AckMode ack = AckMode::None;
  int fragmentBytes = 0;    // 0 = off, else one of kFragSizes
  int aggregateBytes = 0;   // 0 = off, else kAggPayloadBytes
  bool rtsCts = false;
  int cwMin = 15;
  bool carrierSense = false;
  int dataRateMbps = 54;

  bool operator==(const BlockConfig&) const = default;

  // Per-field domain indices; doubles as the lexicographic sort key.
  std::tuple<int, int, int, int, int, int, int, int> key() const;
};

BlockConfig defaultCsmaCaConfig();

// Domain-membership violations (empty = well formed). Inter-block
// dependencies are the logic controller's job, not checked here.
std::vector<std::string> structuralErrors(const BlockConfig& config);

inline constexpr int kEncodingDim = 29;  // 3+2+4+2+2+7+2+7

// One-hot concatenation over the eight block domains; exactly 8 entries are 1.
// Throws std::invalid_argument if the config is not well formed.
std::vector<double> encodeConfig(const BlockConfig& config);

// Inverse of encodeConfig; throws std::invalid_argument on malformed vectors.
BlockConfig decodeConfig(const std::vector<double>& encoding);

std::string describeConfig(const BlockConfig& config);

const char* toString(BackoffAlg alg);
const char* toString(AckMode mode);

}  // namespace macblocks
