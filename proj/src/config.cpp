#include "macblocks/config.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace macblocks {

namespace {

template <typename C>
int indexIn(const C& domain, int value) {
  auto it = std::find(domain.begin(), domain.end(), value);
  return it == domain.end() ? -1 : static_cast<int>(it - domain.begin());
}

}  // namespace

std::tuple<int, int, int, int, int, int, int, int> BlockConfig::key() const {
  int fragIdx = fragmentBytes == 0 ? 0 : 1 + indexIn(kFragSizes, fragmentBytes);
  int aggIdx = aggregateBytes == 0 ? 0 : 1;
  return {static_cast<int>(backoff), static_cast<int>(ack),
          fragIdx,    aggIdx,
          rtsCts ? 1 : 0,            indexIn(kCwMinValues, cwMin),
          carrierSense ? 1 : 0,      indexIn(kDataRatesMbps, dataRateMbps)};
}

BlockConfig defaultCsmaCaConfig() {
  BlockConfig c;
  c.backoff = BackoffAlg::Beb;
  c.ack = AckMode::Immediate;
  c.fragmentBytes = 0;
  c.aggregateBytes = 0;
  c.rtsCts = false;
  c.cwMin = 15;
  c.carrierSense = true;
  c.dataRateMbps = 54;
  return c;
}

std::vector<std::string> structuralErrors(const BlockConfig& c) {
  std::vector<std::string> errors;
  if (c.fragmentBytes != 0 && indexIn(kFragSizes, c.fragmentBytes) < 0)
    errors.push_back("fragmentBytes must be 0 or one of {200, 500, 1000}");
  if (c.aggregateBytes != 0 && c.aggregateBytes != kAggPayloadBytes)
    errors.push_back("aggregateBytes must be 0 or 2000");
  if (indexIn(kCwMinValues, c.cwMin) < 0)
    errors.push_back("cwMin must be one of {15, 31, 63, 127, 255, 511, 1023}");
  if (indexIn(kDataRatesMbps, c.dataRateMbps) < 0)
    errors.push_back("dataRateMbps must be one of {6, 9, 12, 24, 36, 48, 54}");
  return errors;
}

std::vector<double> encodeConfig(const BlockConfig& c) {
  auto errors = structuralErrors(c);
  if (!errors.empty())
    throw std::invalid_argument("encodeConfig: invalid config: " + errors.front());

  auto [backoff, ack, frag, agg, rts, cw, cs, rate] = c.key();
  std::vector<double> v(kEncodingDim, 0.0);
  int offset = 0;
  auto mark = [&](int idx, int width) {
    v[offset + idx] = 1.0;
    offset += width;
  };
  mark(backoff, 3);
  mark(ack, 2);
  mark(frag, 4);
  mark(agg, 2);
  mark(rts, 2);
  mark(cw, 7);
  mark(cs, 2);
  mark(rate, 7);
  return v;
}

BlockConfig decodeConfig(const std::vector<double>& v) {
  if (v.size() != kEncodingDim)
    throw std::invalid_argument("decodeConfig: expected 29 entries, got " +
                                std::to_string(v.size()));
  int offset = 0;
  auto group = [&](int width) {
    int hot = -1;
    for (int i = 0; i < width; ++i) {
      double x = v[offset + i];
      if (x != 0.0 && x != 1.0)
        throw std::invalid_argument("decodeConfig: entries must be 0 or 1");
      if (x == 1.0) {
        if (hot >= 0)
          throw std::invalid_argument("decodeConfig: more than one active entry in a group");
        hot = i;
      }
    }
    if (hot < 0)
      throw std::invalid_argument("decodeConfig: no active entry in a group");
    offset += width;
    return hot;
  };

  BlockConfig c;
  c.backoff = static_cast<BackoffAlg>(group(3));
  c.ack = static_cast<AckMode>(group(2));
  int frag = group(4);
  c.fragmentBytes = frag == 0 ? 0 : kFragSizes[frag - 1];
  c.aggregateBytes = group(2) == 0 ? 0 : kAggPayloadBytes;
  c.rtsCts = group(2) == 1;
  c.cwMin = kCwMinValues[group(7)];
  c.carrierSense = group(2) == 1;
  c.dataRateMbps = kDataRatesMbps[group(7)];
  return c;
}

std::string describeConfig(const BlockConfig& c) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "backoff=%s ack=%s frag=%d agg=%d rts=%d cwMin=%d cs=%d rate=%d",
                toString(c.backoff), toString(c.ack), c.fragmentBytes,
                c.aggregateBytes, c.rtsCts ? 1 : 0, c.cwMin,
                c.carrierSense ? 1 : 0, c.dataRateMbps);
  return buf;
}

const char* toString(BackoffAlg alg) {
  switch (alg) {
    case BackoffAlg::Fixed: return "None";
    case BackoffAlg::Beb: return "BEB";
    case BackoffAlg::Eied: return "EIED";
  }
  return "?";
}

const char* toString(AckMode mode) {
  return mode == AckMode::None ? "NoAck" : "ImmediateAck";
}

}  // namespace macblocks
