#include "gearevo/rnn.hpp"

#include <algorithm>
#include <cmath>

namespace gearevo {

namespace {

constexpr int kN = RnnGenome::kNodes;
constexpr int kG = RnnGenome::kGearOutputs;

// y = M * x for a row-major rows x kN block starting at `offset`.
void matvec(const RnnGenome& g, int offset, int rows,
            const std::array<double, kN>& x, double* y) {
  for (int r = 0; r < rows; ++r) {
    double acc = 0.0;
    const double* row = g.genes.data() + offset + r * kN;
    for (int c = 0; c < kN; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

}  // namespace

RnnState rnn_step(const RnnGenome& genome, const RnnState& state) {
  RnnState next;

  double in_part[kN];
  double rec_part[kN];
  matvec(genome, RnnGenome::kInputWeightsOffset, kN, state.output, in_part);
  matvec(genome, RnnGenome::kRecurrentWeightsOffset, kN, state.hidden,
         rec_part);
  for (int i = 0; i < kN; ++i) {
    next.hidden[i] = std::tanh(
        in_part[i] + rec_part[i] +
        genome.genes[RnnGenome::kHiddenBiasOffset + i]);
  }

  // Gear-size nodes: softmax over 6 logits (max-shifted for stability).
  double logits[kG];
  matvec(genome, RnnGenome::kGearWeightsOffset, kG, next.hidden, logits);
  double max_logit = logits[0] + genome.genes[RnnGenome::kGearBiasOffset];
  for (int i = 0; i < kG; ++i) {
    logits[i] += genome.genes[RnnGenome::kGearBiasOffset + i];
    max_logit = std::max(max_logit, logits[i]);
  }
  double sum = 0.0;
  for (int i = 0; i < kG; ++i) {
    logits[i] = std::exp(logits[i] - max_logit);
    sum += logits[i];
  }
  for (int i = 0; i < kG; ++i) next.output[i] = logits[i] / sum;

  // Placement and continue nodes: tanh.
  double ctrl[2];
  matvec(genome, RnnGenome::kControlWeightsOffset, 2, next.hidden, ctrl);
  next.output[kG] =
      std::tanh(ctrl[0] + genome.genes[RnnGenome::kControlBiasOffset]);
  next.output[kG + 1] =
      std::tanh(ctrl[1] + genome.genes[RnnGenome::kControlBiasOffset + 1]);

  return next;
}

DecodeResult decode(const RnnGenome& genome) {
  constexpr int kMinGears = 2;
  constexpr int kMaxGears = 6;

  DecodeResult result;
  RnnState state = RnnState::initial();
  for (int step = 0; step < kMaxGears; ++step) {
    const RnnState prev = state;
    state = rnn_step(genome, prev);

    DecodedAction action;
    action.gear_id = 1;
    for (int i = 1; i < kG; ++i)
      if (state.output[i] > state.output[action.gear_id - 1])
        action.gear_id = i + 1;
    action.placement =
        state.output[kG] >= 0.0 ? Placement::Coaxial : Placement::Linear;
    action.continue_adding = state.output[kG + 1] >= 0.0;

    result.steps.push_back({action.gear_id, action.placement});
    result.trace.steps.push_back(
        {prev.output, state.hidden, state.output, action});

    const int emitted = step + 1;
    if (!action.continue_adding && emitted >= kMinGears) break;
  }
  return result;
}

RnnGenome random_genome(RngStream& rng) {
  RnnGenome g;
  for (double& gene : g.genes) gene = rng.uniform(-1.0, 1.0);
  return g;
}

}  // namespace gearevo
