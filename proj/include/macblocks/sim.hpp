#pragma once

#include <cstdint>
#include <string>

#include "macblocks/config.hpp"
#include "macblocks/scenario.hpp"

namespace macblocks {

struct TimingParams {
  double slotSec = 2.0e-4;
  double sifsSec = 5.0e-5;
  double difsSec = 1.0e-4;
  double phyHeaderSec = 2.0e-5;
  int ackBytes = 14;
  int rtsBytes = 20;
  int ctsBytes = 14;
  int macHeaderBytes = 34;
  double ackTimeoutSec = 0.0;  // 0 = derive from sifs + ack airtime + one slot
  int retryLimit = 7;
  double txPowerW = 1.65;
  double rxPowerW = 1.4;
  double idlePowerW = 1.15;

  bool operator==(const TimingParams&) const = default;
};

enum class TxOutcome { Success, Failure };

// Airtime of one frame: PHY preamble plus (payload + MAC header) at the PHY rate.
double transmissionTime(int payloadBytes, int rateMbps, const TimingParams& timing);

// Airtime of a control frame (no MAC header on top; byte count is the whole frame).
double controlFrameTime(int frameBytes, int rateMbps, const TimingParams& timing);

double frameErrorProb(std::int64_t bits, double ber);

int updateCw(BackoffAlg algorithm, int current, TxOutcome outcome, int cwMin);

double ackTimeout(const TimingParams& timing, int rateMbps);

// Contention-free closed form for one saturated station; test oracle for simulate().
double singleStationOracle(const BlockConfig& config, const TimingParams& timing);

struct SimOptions {
  bool trace = false;
  std::string tracePath;
};

SimStats simulate(const BlockConfig& config, const Scenario& scenario,
                  const TimingParams& timing, const SimOptions& options = {});

}  // namespace macblocks
