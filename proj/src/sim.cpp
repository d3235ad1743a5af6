#include "macblocks/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "macblocks/errors.hpp"
#include "macblocks/logic.hpp"
#include "macblocks/rng.hpp"

namespace macblocks {

double transmissionTime(int payloadBytes, int rateMbps, const TimingParams& t) {
  return t.phyHeaderSec + 8.0 * (payloadBytes + t.macHeaderBytes) / (rateMbps * 1e6);
}

double controlFrameTime(int frameBytes, int rateMbps, const TimingParams& t) {
  return t.phyHeaderSec + 8.0 * frameBytes / (rateMbps * 1e6);
}

double frameErrorProb(std::int64_t bits, double ber) {
  if (bits <= 0 || ber <= 0.0) return 0.0;
  return -std::expm1(static_cast<double>(bits) * std::log1p(-ber));
}

int updateCw(BackoffAlg algorithm, int current, TxOutcome outcome, int cwMin) {
  switch (algorithm) {
    case BackoffAlg::Fixed:
      return current;
    case BackoffAlg::Beb:
      return outcome == TxOutcome::Failure ? std::min(2 * current + 1, kCwMax) : cwMin;
    case BackoffAlg::Eied:
      return outcome == TxOutcome::Failure ? std::min(2 * current + 1, kCwMax)
                                           : std::max((current + 1) / 2 - 1, cwMin);
  }
  return current;
}

double ackTimeout(const TimingParams& t, int rateMbps) {
  if (t.ackTimeoutSec > 0.0) return t.ackTimeoutSec;
  return t.sifsSec + controlFrameTime(t.ackBytes, rateMbps, t) + t.slotSec;
}

double singleStationOracle(const BlockConfig& config, const TimingParams& t) {
  ResolvedRuntime rt = resolveRuntime(config);
  double bits = 8.0 * rt.effectivePayloadBytes;
  double cycle = t.difsSec + 0.5 * rt.effectiveCwMin * t.slotSec +
                 transmissionTime(rt.effectivePayloadBytes, config.dataRateMbps, t);
  if (config.ack == AckMode::Immediate)
    cycle += t.sifsSec + controlFrameTime(t.ackBytes, config.dataRateMbps, t);
  return bits / cycle / 1e6;
}

namespace {

enum class FrameKind { Rts, Cts, Data, Ack };

const char* frameKindName(FrameKind k) {
  switch (k) {
    case FrameKind::Rts: return "RTS";
    case FrameKind::Cts: return "CTS";
    case FrameKind::Data: return "DATA";
    case FrameKind::Ack: return "ACK";
  }
  return "?";
}

// Declaration order doubles as the processing priority at equal timestamps:
// channel releases first, then NAV/arrival bookkeeping, then countdowns, and
// committed transmissions last so same-instant backoff expiries collide
// instead of sensing each other.
enum class EvKind {
  TxEnd,
  NavExpiry,
  Join,
  Arrival,
  DifsDone,
  SlotTick,
  TxStart,
  CtsTimeout,
  AckTimeout,
};

struct Ev {
  double t;
  EvKind kind;
  int node;
  std::uint64_t gen;
  int aux;
  std::uint64_t seq;
};

struct EvLater {
  bool operator()(const Ev& a, const Ev& b) const {
    return std::tie(a.t, a.kind, a.node, a.seq) > std::tie(b.t, b.kind, b.node, b.seq);
  }
};

enum class Phase { Off, Idle, Contend, TxRts, WaitCts, TxData, WaitAck };

struct Node {
  double x = 0, y = 0;
  bool active = false;
  double joinTime = 0;
  std::int64_t backlogBytes = 0;

  bool hasFrame = false;
  int framePayloadBytes = 0;
  int retryCount = 0;
  bool frameDelivered = false;

  int cw = 15;
  int slotsLeft = 0;
  Phase phase = Phase::Idle;
  bool frozen = false;
  std::uint64_t gen = 0;

  int audibleCount = 0;
  double navRtsUntil = 0, navDataUntil = 0;
  bool transmitting = false;

  bool pendingSend = false;
  FrameKind pendKind = FrameKind::Data;
  int pendDest = 0;
  int pendBytes = 0;

  double txTime = 0, rxTime = 0, rxOpenSince = -1;
  double nextArrival = -1;
};

struct Tx {
  int sender = 0, dest = 0;
  FrameKind kind = FrameKind::Data;
  int payloadBytes = 0;
  double start = 0, end = 0;
  bool interfered = false, destDeaf = false, live = false;
};

class Simulator {
 public:
  Simulator(const BlockConfig& config, const Scenario& scenario,
            const TimingParams& timing, const SimOptions& options)
      : cfg_(config),
        sc_(scenario),
        tm_(timing),
        opt_(options),
        rt_(resolveRuntime(config)),
        channelRng_(mixSeed(scenario.seed, 0xFFFF, 0x424552)) {}

  SimStats run() {
    setup();
    loop();
    finish();
    return stats_;
  }

 private:
  BlockConfig cfg_;
  Scenario sc_;
  TimingParams tm_;
  SimOptions opt_;
  ResolvedRuntime rt_;

  std::vector<Node> nodes_;  // user nodes 0..userCount-1, access point last
  std::vector<Rng> macRng_, arrivalRng_;
  Rng channelRng_;
  int userCount_ = 0;
  int ap_ = 0;
  double lambdaPerNode_ = 0;
  int nextInactive_ = 0;

  std::priority_queue<Ev, std::vector<Ev>, EvLater> heap_;
  std::uint64_t seq_ = 0;
  double now_ = 0;

  std::vector<Tx> txs_;
  std::vector<int> freeTx_, activeTx_;
  int activeCount_ = 0;
  bool episodeOverlap_ = false;
  int dataActive_ = 0, ctrlActive_ = 0;

  double lastSegT_ = 0;
  SimStats stats_;
  std::ofstream traceOut_;

  double dataT_, ackT_, rtsT_, ctsT_;

  void push(double t, EvKind kind, int node, std::uint64_t gen = 0, int aux = 0) {
    heap_.push(Ev{t, kind, node, gen, aux, seq_++});
  }

  bool isAp(int i) const { return i == ap_; }

  bool audible(int a, int b) const {
    if (a == b) return false;
    double dx = nodes_[a].x - nodes_[b].x, dy = nodes_[a].y - nodes_[b].y;
    return dx * dx + dy * dy <= sc_.radioRangeMeters * sc_.radioRangeMeters;
  }

  double effNav(const Node& n) const {
    return cfg_.carrierSense ? std::max(n.navRtsUntil, n.navDataUntil) : n.navRtsUntil;
  }

  bool perceivedIdle(const Node& n, double t) const {
    if (n.transmitting) return false;
    if (t < effNav(n)) return false;
    return cfg_.carrierSense ? n.audibleCount == 0 : true;
  }

  void trace(double t, int node, const char* kind, const std::string& detail) {
    if (!traceOut_.is_open()) return;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", t);
    int ext = isAp(node) ? -1 : node;
    traceOut_ << buf << '\t' << ext << '\t' << kind << '\t'
              << (detail.empty() ? "-" : detail) << '\n';
  }

  void advanceTo(double t) {
    double span = t - lastSegT_;
    if (span > 0) {
      if (dataActive_ > 0)
        stats_.dataAirtimeSec += span;
      else if (ctrlActive_ > 0)
        stats_.controlAirtimeSec += span;
    }
    lastSegT_ = t;
  }

  void openRx(Node& n, double t) {
    if (n.rxOpenSince < 0) n.rxOpenSince = t;
  }
  void closeRx(Node& n, double t) {
    if (n.rxOpenSince >= 0) {
      n.rxTime += t - n.rxOpenSince;
      n.rxOpenSince = -1;
    }
  }

  void freeze(Node& n) {
    if (n.phase == Phase::Contend && !n.frozen) {
      n.frozen = true;
      n.gen++;
    }
  }

  void resume(int i, double t) {
    Node& n = nodes_[i];
    n.frozen = false;
    n.gen++;
    push(t + tm_.difsSec, EvKind::DifsDone, i, n.gen);
  }

  void setNav(int i, double t, double until, bool fromRts) {
    Node& n = nodes_[i];
    double& slot = fromRts ? n.navRtsUntil : n.navDataUntil;
    if (until <= slot) return;
    slot = until;
    if (effNav(n) > t) {
      freeze(n);
      push(effNav(n), EvKind::NavExpiry, i, 0);
    }
  }

  void startContend(int i, double t) {
    Node& n = nodes_[i];
    n.phase = Phase::Contend;
    n.slotsLeft = macRng_[i].uniformInt(0, n.cw);
    n.gen++;
    if (perceivedIdle(n, t)) {
      n.frozen = false;
      push(t + tm_.difsSec, EvKind::DifsDone, i, n.gen);
    } else {
      n.frozen = true;
    }
  }

  void newFrame(int i, double t) {
    Node& n = nodes_[i];
    n.framePayloadBytes = static_cast<int>(
        std::min<std::int64_t>(n.backlogBytes, rt_.effectivePayloadBytes));
    n.backlogBytes -= n.framePayloadBytes;
    n.hasFrame = true;
    n.frameDelivered = false;
    n.retryCount = 0;
    startContend(i, t);
  }

  void completeFrame(int i, double t) {
    Node& n = nodes_[i];
    n.hasFrame = false;
    n.gen++;
    if (n.backlogBytes > 0)
      newFrame(i, t);
    else
      n.phase = Phase::Idle;
  }

  void failFrame(int i, double t) {
    Node& n = nodes_[i];
    n.cw = updateCw(rt_.effectiveBackoff, n.cw, TxOutcome::Failure, rt_.effectiveCwMin);
    n.retryCount++;
    if (n.retryCount > tm_.retryLimit) {
      stats_.drops++;
      n.cw = rt_.effectiveCwMin;
      completeFrame(i, t);
    } else {
      stats_.retransmissions++;
      startContend(i, t);
    }
  }

  void commitTx(int i, double t) {
    Node& n = nodes_[i];
    trace(t, i, "BackoffExpiry", "cw=" + std::to_string(n.cw));
    n.phase = cfg_.rtsCts ? Phase::TxRts : Phase::TxData;
    n.pendingSend = true;
    n.pendKind = cfg_.rtsCts ? FrameKind::Rts : FrameKind::Data;
    n.pendDest = ap_;
    n.pendBytes = n.framePayloadBytes;
    n.gen++;
    push(t, EvKind::TxStart, i);
  }

  double frameAirtime(FrameKind kind, int payloadBytes) const {
    switch (kind) {
      case FrameKind::Data: return transmissionTime(payloadBytes, cfg_.dataRateMbps, tm_);
      case FrameKind::Rts: return rtsT_;
      case FrameKind::Cts: return ctsT_;
      case FrameKind::Ack: return ackT_;
    }
    return 0;
  }

  // NAV window from the tail of the current frame through the rest of the
  // exchange, as advertised in duration fields.
  double exchangeTail(FrameKind afterFrame, int payloadBytes, double t) const {
    double until = t;
    if (afterFrame == FrameKind::Rts)
      until += tm_.sifsSec + ctsT_ + tm_.sifsSec + frameAirtime(FrameKind::Data, payloadBytes);
    else if (afterFrame == FrameKind::Cts)
      until += tm_.sifsSec + frameAirtime(FrameKind::Data, payloadBytes);
    if (cfg_.ack == AckMode::Immediate) until += tm_.sifsSec + ackT_;
    return until;
  }

  void scheduleResponse(int from, double t, FrameKind kind, int dest, int payloadBytes) {
    Node& n = nodes_[from];
    if (n.pendingSend || n.transmitting) return;
    n.pendingSend = true;
    n.pendKind = kind;
    n.pendDest = dest;
    n.pendBytes = payloadBytes;
    push(t + tm_.sifsSec, EvKind::TxStart, from);
  }

  void activateNode(int i, double t) {
    Node& n = nodes_[i];
    n.active = true;
    n.joinTime = t;
    n.phase = Phase::Idle;
    n.cw = rt_.effectiveCwMin;
    for (int id : activeTx_) {
      const Tx& tx = txs_[id];
      if (audible(tx.sender, i)) n.audibleCount++;
    }
    if (n.audibleCount > 0) openRx(n, t);
    if (lambdaPerNode_ > 0) {
      n.nextArrival = t + arrivalRng_[i].exponential(lambdaPerNode_);
      if (n.nextArrival <= sc_.durationSec) push(n.nextArrival, EvKind::Arrival, i);
    }
  }

  void onArrival(int i, double t) {
    Node& n = nodes_[i];
    n.backlogBytes += kDefaultPayloadBytes;
    stats_.generatedBits += 8LL * kDefaultPayloadBytes;
    trace(t, i, "PacketArrival",
          "bytes=" + std::to_string(kDefaultPayloadBytes) +
              " backlog=" + std::to_string(n.backlogBytes));
    n.nextArrival = t + arrivalRng_[i].exponential(lambdaPerNode_);
    if (n.nextArrival <= sc_.durationSec) push(n.nextArrival, EvKind::Arrival, i);
    if (!n.hasFrame && n.phase == Phase::Idle) newFrame(i, t);
  }

  void onTxStart(int i, double t) {
    Node& n = nodes_[i];
    if (!n.pendingSend) return;
    n.pendingSend = false;

    int id;
    if (!freeTx_.empty()) {
      id = freeTx_.back();
      freeTx_.pop_back();
    } else {
      id = static_cast<int>(txs_.size());
      txs_.emplace_back();
    }
    Tx& tx = txs_[id];
    tx = Tx{};
    tx.sender = i;
    tx.dest = n.pendDest;
    tx.kind = n.pendKind;
    tx.payloadBytes = n.pendBytes;
    tx.start = t;
    tx.end = t + frameAirtime(tx.kind, tx.payloadBytes);
    tx.live = true;

    for (int gid : activeTx_) {
      Tx& g = txs_[gid];
      if (audible(g.sender, tx.dest)) tx.interfered = true;
      if (audible(tx.sender, g.dest)) g.interfered = true;
      if (g.dest == i) g.destDeaf = true;
    }
    if (nodes_[tx.dest].transmitting) tx.destDeaf = true;

    activeTx_.push_back(id);
    activeCount_++;
    if (activeCount_ >= 2) episodeOverlap_ = true;
    if (tx.kind == FrameKind::Data)
      dataActive_++;
    else
      ctrlActive_++;

    n.transmitting = true;
    closeRx(n, t);

    for (int m = 0; m < userCount_; ++m) {
      if (m == i) continue;
      Node& other = nodes_[m];
      if (!other.active || !audible(i, m)) continue;
      other.audibleCount++;
      if (other.audibleCount == 1 && !other.transmitting) openRx(other, t);
      if (cfg_.carrierSense) freeze(other);
    }

    trace(t, i, "TxStart",
          std::string("kind=") + frameKindName(tx.kind) +
              " dest=" + std::to_string(isAp(tx.dest) ? -1 : tx.dest) +
              " bytes=" + std::to_string(tx.payloadBytes));
    push(tx.end, EvKind::TxEnd, i, 0, id);
  }

  void onTxEnd(int txId, double t) {
    Tx tx = txs_[txId];
    txs_[txId].live = false;
    freeTx_.push_back(txId);
    activeTx_.erase(std::find(activeTx_.begin(), activeTx_.end(), txId));
    activeCount_--;
    if (activeCount_ == 0 && episodeOverlap_) {
      stats_.collisions++;
      episodeOverlap_ = false;
    }
    if (tx.kind == FrameKind::Data)
      dataActive_--;
    else
      ctrlActive_--;

    Node& sender = nodes_[tx.sender];
    sender.transmitting = false;
    sender.txTime += t - tx.start;
    if (sender.audibleCount > 0) openRx(sender, t);

    for (int m = 0; m < userCount_; ++m) {
      if (m == tx.sender) continue;
      Node& other = nodes_[m];
      if (!other.active || !audible(tx.sender, m)) continue;
      other.audibleCount--;
      if (other.audibleCount == 0) closeRx(other, t);
    }

    bool ok = !tx.interfered && !tx.destDeaf && audible(tx.sender, tx.dest) &&
              nodes_[tx.dest].active;
    const char* cause = tx.interfered ? "collision" : tx.destDeaf ? "deaf" : "range";
    if (ok) {
      std::int64_t ctrlBytes = tx.kind == FrameKind::Rts   ? tm_.rtsBytes
                               : tx.kind == FrameKind::Cts ? tm_.ctsBytes
                                                           : tm_.ackBytes;
      std::int64_t bits = tx.kind == FrameKind::Data
                              ? 8LL * (tx.payloadBytes + tm_.macHeaderBytes)
                              : 8LL * ctrlBytes;
      double fer = frameErrorProb(bits, sc_.ber);
      if (fer > 0 && channelRng_.uniform() < fer) {
        ok = false;
        cause = "ber";
      }
    }
    trace(t, tx.sender, "TxEnd",
          std::string("kind=") + frameKindName(tx.kind) + " ok=" + (ok ? "1" : "0") +
              (ok ? "" : std::string(" cause=") + cause));

    switch (tx.kind) {
      case FrameKind::Rts: {
        sender.phase = Phase::WaitCts;
        sender.gen++;
        push(t + tm_.sifsSec + ctsT_ + tm_.slotSec, EvKind::CtsTimeout, tx.sender,
             sender.gen);
        if (ok) {
          scheduleResponse(tx.dest, t, FrameKind::Cts, tx.sender, tx.payloadBytes);
          double until = exchangeTail(FrameKind::Rts, tx.payloadBytes, t);
          for (int m = 0; m < userCount_; ++m)
            if (m != tx.sender && nodes_[m].active && audible(tx.sender, m))
              setNav(m, t, until, true);
        }
        break;
      }
      case FrameKind::Cts: {
        int x = tx.dest;
        if (ok) {
          Node& nx = nodes_[x];
          nx.gen++;
          nx.phase = Phase::TxData;
          nx.pendingSend = true;
          nx.pendKind = FrameKind::Data;
          nx.pendDest = ap_;
          nx.pendBytes = nx.framePayloadBytes;
          push(t + tm_.sifsSec, EvKind::TxStart, x);
          double until = exchangeTail(FrameKind::Cts, tx.payloadBytes, t);
          for (int m = 0; m < userCount_; ++m)
            if (m != x && nodes_[m].active && audible(tx.sender, m))
              setNav(m, t, until, true);
        }
        break;
      }
      case FrameKind::Data: {
        if (ok) {
          if (!sender.frameDelivered) {
            sender.frameDelivered = true;
            stats_.deliveredBits += 8LL * tx.payloadBytes;
          }
          if (cfg_.ack == AckMode::Immediate)
            scheduleResponse(tx.dest, t, FrameKind::Ack, tx.sender, 0);
          if (!cfg_.rtsCts && cfg_.ack == AckMode::Immediate) {
            double until = t + tm_.sifsSec + ackT_;
            for (int m = 0; m < userCount_; ++m)
              if (m != tx.sender && nodes_[m].active && audible(tx.sender, m))
                setNav(m, t, until, false);
          }
        }
        if (cfg_.ack == AckMode::Immediate) {
          sender.phase = Phase::WaitAck;
          sender.gen++;
          push(t + ackTimeout(tm_, cfg_.dataRateMbps), EvKind::AckTimeout, tx.sender,
               sender.gen);
        } else {
          sender.cw = updateCw(rt_.effectiveBackoff, sender.cw, TxOutcome::Success,
                               rt_.effectiveCwMin);
          completeFrame(tx.sender, t);
        }
        break;
      }
      case FrameKind::Ack: {
        int x = tx.dest;
        if (ok) {
          Node& nx = nodes_[x];
          nx.gen++;
          nx.cw = updateCw(rt_.effectiveBackoff, nx.cw, TxOutcome::Success,
                           rt_.effectiveCwMin);
          completeFrame(x, t);
        }
        break;
      }
    }

    for (int m = 0; m < userCount_; ++m) {
      Node& other = nodes_[m];
      if (other.active && other.phase == Phase::Contend && other.frozen &&
          perceivedIdle(other, t))
        resume(m, t);
    }
  }

  void setup() {
    int totalN = sc_.nodeCount;
    for (const auto& join : sc_.joinSchedule) totalN += join.count;
    userCount_ = totalN;
    ap_ = totalN;
    nodes_.assign(totalN + 1, Node{});

    Rng place(mixSeed(sc_.seed, 0xFFFF, 0x504F53));
    for (int i = 0; i < totalN; ++i) {
      nodes_[i].x = place.uniform(0, sc_.areaWidthMeters);
      nodes_[i].y = place.uniform(0, sc_.areaHeightMeters);
      macRng_.emplace_back(mixSeed(sc_.seed, i, 0x4D4143));
      arrivalRng_.emplace_back(mixSeed(sc_.seed, i, 0x415252));
    }
    Node& ap = nodes_[ap_];
    ap.x = sc_.areaWidthMeters / 2;
    ap.y = sc_.areaHeightMeters / 2;
    ap.active = true;

    lambdaPerNode_ = totalN > 0 ? sc_.offeredLoadPktPerSec / totalN : 0;

    dataT_ = transmissionTime(rt_.effectivePayloadBytes, cfg_.dataRateMbps, tm_);
    ackT_ = controlFrameTime(tm_.ackBytes, cfg_.dataRateMbps, tm_);
    rtsT_ = controlFrameTime(tm_.rtsBytes, cfg_.dataRateMbps, tm_);
    ctsT_ = controlFrameTime(tm_.ctsBytes, cfg_.dataRateMbps, tm_);

    for (int i = 0; i < sc_.nodeCount; ++i) activateNode(i, 0);
    nextInactive_ = sc_.nodeCount;
    double lastJoin = 0;
    for (std::size_t k = 0; k < sc_.joinSchedule.size(); ++k) {
      lastJoin = std::max(lastJoin, sc_.joinSchedule[k].timeSec);
      push(sc_.joinSchedule[k].timeSec, EvKind::Join, 0, 0, static_cast<int>(k));
    }

    if (opt_.trace && !opt_.tracePath.empty()) {
      traceOut_.open(opt_.tracePath);
      if (!traceOut_) throw IoError("cannot write " + opt_.tracePath);
    }
  }

  void finish() {
    advanceTo(sc_.durationSec);
    for (int id : activeTx_) {
      Tx& tx = txs_[id];
      nodes_[tx.sender].txTime += sc_.durationSec - tx.start;
      nodes_[tx.sender].transmitting = false;
    }
    for (int i = 0; i < userCount_; ++i) {
      Node& n = nodes_[i];
      if (!n.active) continue;
      closeRx(n, sc_.durationSec);
      double span = sc_.durationSec - n.joinTime;
      double idleT = std::max(0.0, span - n.txTime - n.rxTime);
      stats_.energyJoules +=
          n.txTime * tm_.txPowerW + n.rxTime * tm_.rxPowerW + idleT * tm_.idlePowerW;
    }
    stats_.idleSec = std::max(
        0.0, sc_.durationSec - stats_.dataAirtimeSec - stats_.controlAirtimeSec);
    stats_.avgThroughputMbps = stats_.deliveredBits / sc_.durationSec / 1e6;
  }

  void loop() {
    while (!heap_.empty()) {
      Ev ev = heap_.top();
      if (ev.t > sc_.durationSec) break;
      heap_.pop();
      advanceTo(ev.t);
      now_ = ev.t;
      Node& n = nodes_[ev.node];
      switch (ev.kind) {
        case EvKind::TxEnd:
          onTxEnd(ev.aux, ev.t);
          break;
        case EvKind::NavExpiry:
          if (n.phase == Phase::Contend && n.frozen && perceivedIdle(n, ev.t)) {
            trace(ev.t, ev.node, "NavExpiry", "");
            resume(ev.node, ev.t);
          }
          break;
        case EvKind::Join: {
          const NodeJoin& join = sc_.joinSchedule[ev.aux];
          for (int c = 0; c < join.count && nextInactive_ < userCount_; ++c)
            activateNode(nextInactive_++, ev.t);
          break;
        }
        case EvKind::Arrival:
          onArrival(ev.node, ev.t);
          break;
        case EvKind::DifsDone:
          if (ev.gen != n.gen || n.phase != Phase::Contend || n.frozen) break;
          if (n.slotsLeft == 0)
            commitTx(ev.node, ev.t);
          else
            push(ev.t + tm_.slotSec, EvKind::SlotTick, ev.node, n.gen);
          break;
        case EvKind::SlotTick:
          if (ev.gen != n.gen || n.phase != Phase::Contend || n.frozen) break;
          n.slotsLeft--;
          if (n.slotsLeft == 0)
            commitTx(ev.node, ev.t);
          else
            push(ev.t + tm_.slotSec, EvKind::SlotTick, ev.node, n.gen);
          break;
        case EvKind::TxStart:
          onTxStart(ev.node, ev.t);
          break;
        case EvKind::CtsTimeout:
          if (ev.gen != n.gen || n.phase != Phase::WaitCts) break;
          trace(ev.t, ev.node, "AckTimeout", "kind=CTS");
          failFrame(ev.node, ev.t);
          break;
        case EvKind::AckTimeout:
          if (ev.gen != n.gen || n.phase != Phase::WaitAck) break;
          trace(ev.t, ev.node, "AckTimeout", "kind=ACK");
          failFrame(ev.node, ev.t);
          break;
      }
    }
  }
};

}  // namespace

SimStats simulate(const BlockConfig& config, const Scenario& scenario,
                  const TimingParams& timing, const SimOptions& options) {
  auto scErrors = scenarioErrors(scenario);
  if (!scErrors.empty())
    throw std::invalid_argument("simulate: " + scErrors.front());
  ValidationReport report = validate(config, builtinRules());
  if (!report.valid)
    throw std::invalid_argument("simulate: invalid config: " +
                                report.violations.front().second);
  Simulator sim(config, scenario, timing, options);
  return sim.run();
}

}  // namespace macblocks
