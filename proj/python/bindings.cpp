#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "macblocks/agent.hpp"
#include "macblocks/config.hpp"
#include "macblocks/json_io.hpp"
#include "macblocks/logic.hpp"
#include "macblocks/runner.hpp"
#include "macblocks/scenario.hpp"
#include "macblocks/sim.hpp"

namespace py = pybind11;
using namespace macblocks;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Composable MAC simulator with a DQN block-selection agent";

  py::enum_<BackoffAlg>(m, "BackoffAlg")
      .value("NONE", BackoffAlg::Fixed)
      .value("BEB", BackoffAlg::Beb)
      .value("EIED", BackoffAlg::Eied);

  py::enum_<AckMode>(m, "AckMode")
      .value("NO_ACK", AckMode::None)
      .value("IMMEDIATE", AckMode::Immediate);

  py::class_<BlockConfig>(m, "BlockConfig")
      .def(py::init<>())
      .def_readwrite("backoff", &BlockConfig::backoff)
      .def_readwrite("ack", &BlockConfig::ack)
      .def_readwrite("fragment_bytes", &BlockConfig::fragmentBytes)
      .def_readwrite("aggregate_bytes", &BlockConfig::aggregateBytes)
      .def_readwrite("rts_cts", &BlockConfig::rtsCts)
      .def_readwrite("cw_min", &BlockConfig::cwMin)
      .def_readwrite("carrier_sense", &BlockConfig::carrierSense)
      .def_readwrite("data_rate_mbps", &BlockConfig::dataRateMbps)
      .def("__eq__", [](const BlockConfig& a, const BlockConfig& b) { return a == b; })
      .def("__repr__", [](const BlockConfig& c) { return "<BlockConfig " + describeConfig(c) + ">"; });

  py::class_<NodeJoin>(m, "NodeJoin")
      .def(py::init<>())
      .def_readwrite("time_sec", &NodeJoin::timeSec)
      .def_readwrite("count", &NodeJoin::count);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("node_count", &Scenario::nodeCount)
      .def_readwrite("offered_load_pkt_per_sec", &Scenario::offeredLoadPktPerSec)
      .def_readwrite("noise", &Scenario::noise)
      .def_readwrite("ber", &Scenario::ber)
      .def_readwrite("area_width_m", &Scenario::areaWidthMeters)
      .def_readwrite("area_height_m", &Scenario::areaHeightMeters)
      .def_readwrite("radio_range_m", &Scenario::radioRangeMeters)
      .def_readwrite("duration_sec", &Scenario::durationSec)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("join_schedule", &Scenario::joinSchedule);

  py::class_<TimingParams>(m, "TimingParams")
      .def(py::init<>())
      .def_readwrite("slot_sec", &TimingParams::slotSec)
      .def_readwrite("sifs_sec", &TimingParams::sifsSec)
      .def_readwrite("difs_sec", &TimingParams::difsSec)
      .def_readwrite("phy_header_sec", &TimingParams::phyHeaderSec)
      .def_readwrite("ack_bytes", &TimingParams::ackBytes)
      .def_readwrite("rts_bytes", &TimingParams::rtsBytes)
      .def_readwrite("cts_bytes", &TimingParams::ctsBytes)
      .def_readwrite("mac_header_bytes", &TimingParams::macHeaderBytes)
      .def_readwrite("retry_limit", &TimingParams::retryLimit);

  py::class_<RewardSpec>(m, "RewardSpec")
      .def(py::init<>())
      .def_readwrite("w0", &RewardSpec::w0)
      .def_readwrite("w1", &RewardSpec::w1);

  py::class_<TrainingConfig>(m, "TrainingConfig")
      .def(py::init<>())
      .def_readwrite("gamma", &TrainingConfig::gamma)
      .def_readwrite("history_len", &TrainingConfig::historyLen)
      .def_readwrite("sgd_step_size", &TrainingConfig::sgdStepSize)
      .def_readwrite("epsilon_start", &TrainingConfig::epsilonStart)
      .def_readwrite("epsilon_end", &TrainingConfig::epsilonEnd)
      .def_readwrite("epsilon_decay_steps", &TrainingConfig::epsilonDecaySteps)
      .def_readwrite("replay_capacity", &TrainingConfig::replayCapacity)
      .def_readwrite("batch_size", &TrainingConfig::batchSize)
      .def_readwrite("target_sync_interval", &TrainingConfig::targetSyncInterval)
      .def_readwrite("steps_per_episode", &TrainingConfig::stepsPerEpisode)
      .def_readwrite("sim_epoch_sec", &TrainingConfig::simEpochSec)
      .def_readwrite("episodes", &TrainingConfig::episodes)
      .def_readwrite("reward_scale", &TrainingConfig::rewardScale);

  py::class_<SimStats>(m, "SimStats")
      .def_readonly("avg_throughput_mbps", &SimStats::avgThroughputMbps)
      .def_readonly("delivered_bits", &SimStats::deliveredBits)
      .def_readonly("generated_bits", &SimStats::generatedBits)
      .def_readonly("collisions", &SimStats::collisions)
      .def_readonly("retransmissions", &SimStats::retransmissions)
      .def_readonly("drops", &SimStats::drops)
      .def_readonly("control_airtime_sec", &SimStats::controlAirtimeSec)
      .def_readonly("data_airtime_sec", &SimStats::dataAirtimeSec)
      .def_readonly("idle_sec", &SimStats::idleSec)
      .def_readonly("energy_joules", &SimStats::energyJoules);

  m.def("default_config", &defaultCsmaCaConfig);
  m.def("describe_config", &describeConfig);
  m.def("encode_config", &encodeConfig);
  m.def("validation_messages", [](const BlockConfig& c) {
    return validate(c, builtinRules()).messages();
  });
  m.def("is_valid", [](const BlockConfig& c) {
    return validate(c, builtinRules()).valid;
  });
  m.def("enumerate_valid", [] { return validActionSpace(); },
        py::return_value_policy::copy);
  m.def("action_space_fingerprint", &actionSpaceFingerprint);

  py::enum_<TxOutcome>(m, "TxOutcome")
      .value("SUCCESS", TxOutcome::Success)
      .value("FAILURE", TxOutcome::Failure);

  m.def("transmission_time", &transmissionTime);
  m.def("frame_error_prob", &frameErrorProb);
  m.def("update_cw", &updateCw);
  m.def("single_station_oracle", &singleStationOracle,
        py::arg("config"), py::arg("timing") = TimingParams{});
  m.def(
      "simulate",
      [](const BlockConfig& c, const Scenario& s, const TimingParams& t,
         bool trace, const std::string& tracePath) {
        SimOptions opt;
        opt.trace = trace;
        opt.tracePath = tracePath;
        return simulate(c, s, t, opt);
      },
      py::arg("config"), py::arg("scenario"),
      py::arg("timing") = TimingParams{}, py::arg("trace") = false,
      py::arg("trace_path") = std::string{});

  m.def("builtin_scenarios", &builtinScenarios);
  m.def("low_load_ramp_scenario", &lowLoadRampScenario);
  m.def("high_load_ramp_scenario", &highLoadRampScenario);

  py::class_<DqnAgent>(m, "DqnAgent")
      .def(py::init<const TrainingConfig&, std::uint64_t>(), py::arg("training"),
           py::arg("seed"))
      .def_property_readonly("action_count", &DqnAgent::actionCount)
      .def_property_readonly("epsilon", &DqnAgent::epsilon)
      .def_property_readonly("env_steps", &DqnAgent::envSteps)
      .def_property_readonly("gradient_steps", &DqnAgent::gradientSteps)
      .def("save", &DqnAgent::save)
      .def_static("load", &DqnAgent::load);

  py::class_<EpisodeStep>(m, "EpisodeStep")
      .def_readonly("config", &EpisodeStep::config)
      .def_readonly("action_idx", &EpisodeStep::actionIdx)
      .def_readonly("throughput_mbps", &EpisodeStep::throughputMbps)
      .def_readonly("reward", &EpisodeStep::reward)
      .def_readonly("loss", &EpisodeStep::loss);

  py::class_<EpisodeRecord>(m, "EpisodeRecord")
      .def_readonly("steps", &EpisodeRecord::steps)
      .def_readonly("mean_reward", &EpisodeRecord::meanReward);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("agent", &TrainResult::agent)
      .def_readonly("episodes", &TrainResult::episodes);

  m.def("train_agent", &trainAgent, py::arg("scenario"), py::arg("training"),
        py::arg("timing") = TimingParams{}, py::arg("reward") = RewardSpec{},
        py::arg("agent_seed") = 1);
  m.def("greedy_config", &greedyConfig, py::arg("agent"), py::arg("scenario"),
        py::arg("timing") = TimingParams{}, py::arg("reward") = RewardSpec{},
        py::arg("probe_steps") = 3);

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("time_sec", &CurvePoint::timeSec)
      .def_readonly("arm", &CurvePoint::arm)
      .def_readonly("seed", &CurvePoint::seed)
      .def_readonly("throughput_mbps", &CurvePoint::throughputMbps);

  py::class_<ArmResult>(m, "ArmResult")
      .def_readonly("arm", &ArmResult::arm)
      .def_readonly("per_seed_mbps", &ArmResult::perSeedMbps)
      .def_readonly("mean_mbps", &ArmResult::meanMbps)
      .def_readonly("stddev_mbps", &ArmResult::stddevMbps);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("seeds", &ComparisonReport::seeds)
      .def_readonly("arms", &ComparisonReport::arms)
      .def_readonly("curve", &ComparisonReport::curve)
      .def_readonly("epoch_sec", &ComparisonReport::epochSec);

  m.def("compare_baseline", &compareBaseline, py::arg("scenario"),
        py::arg("seeds"), py::arg("agent"), py::arg("timing") = TimingParams{});

  py::class_<SelectionFrequencyTable>(m, "SelectionFrequencyTable")
      .def_readonly("repeats", &SelectionFrequencyTable::repeats)
      .def_readonly("block_counts", &SelectionFrequencyTable::blockCounts)
      .def_readonly("config_counts", &SelectionFrequencyTable::configCounts);

  m.def("select_blocks", &selectBlocks, py::arg("scenario"), py::arg("repeats"),
        py::arg("training"), py::arg("timing") = TimingParams{},
        py::arg("reward") = RewardSpec{}, py::arg("base_seed") = 1);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("config", &SweepRow::config)
      .def_readonly("per_seed_mbps", &SweepRow::perSeedMbps)
      .def_readonly("mean_mbps", &SweepRow::meanMbps)
      .def_readonly("stddev_mbps", &SweepRow::stddevMbps);

  m.def(
      "exhaustive_sweep",
      [](const Scenario& s, const std::vector<std::uint64_t>& seeds,
         const TimingParams& t, double budget) {
        SweepOptions opt;
        if (budget > 0) opt.budget = budget;
        return exhaustiveSweep(s, seeds, t, opt);
      },
      py::arg("scenario"), py::arg("seeds"),
      py::arg("timing") = TimingParams{}, py::arg("budget") = 0.0);

  py::register_exception<BudgetExceeded>(m, "BudgetExceededError");
  py::register_exception<IoError>(m, "IoFailure");
}
