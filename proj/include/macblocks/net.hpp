#pragma once

#include <cstdint>
#include <vector>

#include "macblocks/json_io.hpp"

namespace macblocks {

// Dense feed-forward net: rectifier on hidden layers, identity output.
// Weights are stored row-major, weights[l][o * in + i] mapping input i to
// output o of layer l.
struct NNParams {
  std::vector<int> layerSizes;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  int inputDim() const { return layerSizes.front(); }
  int outputDim() const { return layerSizes.back(); }
  std::size_t parameterCount() const;
  bool allFinite() const;
};

NNParams initParams(const std::vector<int>& layerSizes, std::uint64_t seed);

std::vector<double> forward(const NNParams& params, const std::vector<double>& input);

// Forward pass keeping pre-activations for backprop.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;  // per layer, post-activation
  std::vector<std::vector<double>> preacts;      // per non-input layer
};
ForwardTrace forwardTrace(const NNParams& params, const std::vector<double>& input);

struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

Gradients zeroGradients(const NNParams& params);

// Squared TD error on the selected action only; returns the loss and writes
// accumulated gradients into grads (callers zero them for a fresh batch).
double lossAndGradients(const NNParams& params, const std::vector<double>& input,
                        int actionIdx, double tdTarget, Gradients& grads);

double lossAndGradients(const NNParams& params, const std::vector<double>& input,
                        int actionIdx, double tdTarget);

NNParams sgdStep(const NNParams& params, const Gradients& grads, double stepSize);

Json netToJson(const NNParams& params);
NNParams netFromJson(const Json& j);

}  // namespace macblocks
