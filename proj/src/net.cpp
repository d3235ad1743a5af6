#include "macblocks/net.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "macblocks/rng.hpp"

namespace macblocks {

std::size_t NNParams::parameterCount() const {
  std::size_t total = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    total += weights[l].size() + biases[l].size();
  return total;
}

bool NNParams::allFinite() const {
  for (const auto& layer : weights)
    for (double w : layer)
      if (!std::isfinite(w)) return false;
  for (const auto& layer : biases)
    for (double b : layer)
      if (!std::isfinite(b)) return false;
  return true;
}

NNParams initParams(const std::vector<int>& layerSizes, std::uint64_t seed) {
  if (layerSizes.size() < 2)
    throw std::invalid_argument("initParams: need at least input and output layers");
  for (int w : layerSizes)
    if (w < 1) throw std::invalid_argument("initParams: layer widths must be >= 1");

  NNParams p;
  p.layerSizes = layerSizes;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < layerSizes.size(); ++l) {
    int in = layerSizes[l], out = layerSizes[l + 1];
    double sigma = std::sqrt(2.0 / in);
    std::vector<double> w(static_cast<std::size_t>(in) * out);
    for (double& v : w) v = rng.normal(0.0, sigma);
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(out, 0.0);
  }
  return p;
}

namespace {

void checkInput(const NNParams& p, const std::vector<double>& input) {
  if (static_cast<int>(input.size()) != p.inputDim())
    throw std::invalid_argument("forward: input dim " + std::to_string(input.size()) +
                                " != " + std::to_string(p.inputDim()));
}

}  // namespace

ForwardTrace forwardTrace(const NNParams& p, const std::vector<double>& input) {
  checkInput(p, input);
  ForwardTrace tr;
  tr.activations.push_back(input);
  std::size_t layers = p.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    const auto& prev = tr.activations.back();
    int in = p.layerSizes[l], out = p.layerSizes[l + 1];
    std::vector<double> z(out);
    for (int o = 0; o < out; ++o) {
      double acc = p.biases[l][o];
      const double* row = p.weights[l].data() + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) acc += row[i] * prev[i];
      z[o] = acc;
    }
    tr.preacts.push_back(z);
    bool hidden = l + 1 < layers;
    if (hidden)
      for (double& v : z) v = v > 0 ? v : 0;
    tr.activations.push_back(std::move(z));
  }
  return tr;
}

std::vector<double> forward(const NNParams& p, const std::vector<double>& input) {
  return forwardTrace(p, input).activations.back();
}

Gradients zeroGradients(const NNParams& p) {
  Gradients g;
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    g.weights.emplace_back(p.weights[l].size(), 0.0);
    g.biases.emplace_back(p.biases[l].size(), 0.0);
  }
  return g;
}

double lossAndGradients(const NNParams& p, const std::vector<double>& input,
                        int actionIdx, double tdTarget, Gradients& grads) {
  if (actionIdx < 0 || actionIdx >= p.outputDim())
    throw std::out_of_range("lossAndGradients: action index " +
                            std::to_string(actionIdx) + " out of range");
  ForwardTrace tr = forwardTrace(p, input);
  double diff = tr.activations.back()[actionIdx] - tdTarget;
  double loss = diff * diff;

  std::size_t layers = p.weights.size();
  // dLoss/dPreact of the output layer: nonzero only at the selected action.
  std::vector<double> delta(p.layerSizes.back(), 0.0);
  delta[actionIdx] = 2.0 * diff;

  for (std::size_t l = layers; l-- > 0;) {
    int in = p.layerSizes[l], out = p.layerSizes[l + 1];
    const auto& prev = tr.activations[l];
    for (int o = 0; o < out; ++o) {
      double d = delta[o];
      if (d == 0.0) continue;
      grads.biases[l][o] += d;
      double* row = grads.weights[l].data() + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) row[i] += d * prev[i];
    }
    if (l == 0) break;
    std::vector<double> prevDelta(in, 0.0);
    for (int o = 0; o < out; ++o) {
      double d = delta[o];
      if (d == 0.0) continue;
      const double* row = p.weights[l].data() + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) prevDelta[i] += d * row[i];
    }
    const auto& preact = tr.preacts[l - 1];
    for (int i = 0; i < in; ++i)
      if (preact[i] <= 0) prevDelta[i] = 0;
    delta = std::move(prevDelta);
  }
  return loss;
}

double lossAndGradients(const NNParams& p, const std::vector<double>& input,
                        int actionIdx, double tdTarget) {
  Gradients g = zeroGradients(p);
  return lossAndGradients(p, input, actionIdx, tdTarget, g);
}

NNParams sgdStep(const NNParams& p, const Gradients& grads, double stepSize) {
  if (stepSize <= 0) throw std::invalid_argument("sgdStep: stepSize must be > 0");
  NNParams next = p;
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    if (grads.weights[l].size() != p.weights[l].size() ||
        grads.biases[l].size() != p.biases[l].size())
      throw std::invalid_argument("sgdStep: gradient shape mismatch at layer " +
                                  std::to_string(l));
    for (std::size_t k = 0; k < p.weights[l].size(); ++k) {
      double g = grads.weights[l][k];
      if (!std::isfinite(g))
        throw std::runtime_error("sgdStep: non-finite weight gradient at layer " +
                                 std::to_string(l) + " index " + std::to_string(k));
      next.weights[l][k] -= stepSize * g;
    }
    for (std::size_t k = 0; k < p.biases[l].size(); ++k) {
      double g = grads.biases[l][k];
      if (!std::isfinite(g))
        throw std::runtime_error("sgdStep: non-finite bias gradient at layer " +
                                 std::to_string(l) + " index " + std::to_string(k));
      next.biases[l][k] -= stepSize * g;
    }
  }
  return next;
}

Json netToJson(const NNParams& p) {
  Json j;
  j["format"] = 1;
  j["layerSizes"] = p.layerSizes;
  j["weights"] = p.weights;
  j["biases"] = p.biases;
  return j;
}

NNParams netFromJson(const Json& j) {
  if (!j.is_object() || j.value("format", 0) != 1)
    throw std::runtime_error("net checkpoint: unsupported format");
  NNParams p;
  p.layerSizes = j.at("layerSizes").get<std::vector<int>>();
  p.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  p.biases = j.at("biases").get<std::vector<std::vector<double>>>();
  if (p.layerSizes.size() < 2 || p.weights.size() != p.layerSizes.size() - 1 ||
      p.biases.size() != p.weights.size())
    throw std::runtime_error("net checkpoint: inconsistent layer layout");
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    std::size_t in = p.layerSizes[l], out = p.layerSizes[l + 1];
    if (p.weights[l].size() != in * out || p.biases[l].size() != out)
      throw std::runtime_error("net checkpoint: bad layer " + std::to_string(l));
  }
  return p;
}

}  // namespace macblocks
