#pragma once

#include <array>
#include <span>
#include <vector>

#include "gearevo/geometry.hpp"
#include "gearevo/rng.hpp"

namespace gearevo {

// Fixed-topology recurrent network that writes a gear mechanism one step at
// a time. Input, hidden, and output layers all have 8 nodes. Output layout:
// nodes 0..5 are a softmax over the six gear sizes, node 6 selects coaxial
// (>= 0) vs linear placement, node 7 selects continue (>= 0) vs stop.
//
// The genome is stored as one flat vector of 208 weights. Block order (all
// matrices row-major): input->hidden 8x8, hidden->hidden 8x8, hidden bias 8,
// hidden->control 2x8, control bias 2, hidden->gear 6x8, gear bias 6.
struct RnnGenome {
  static constexpr int kNodes = 8;
  static constexpr int kGearOutputs = 6;

  static constexpr int kInputWeightsOffset = 0;      // 8x8
  static constexpr int kRecurrentWeightsOffset = 64; // 8x8
  static constexpr int kHiddenBiasOffset = 128;      // 8
  static constexpr int kControlWeightsOffset = 136;  // 2x8
  static constexpr int kControlBiasOffset = 152;     // 2
  static constexpr int kGearWeightsOffset = 154;     // 6x8
  static constexpr int kGearBiasOffset = 202;        // 6
  static constexpr int kGeneCount = 208;

  std::array<double, kGeneCount> genes{};

  bool operator==(const RnnGenome&) const = default;
};

// Recurrent state carried between steps. Both vectors start as all-ones
// because there is no previous activation at the first step. The output
// half doubles as the next step's input.
struct RnnState {
  std::array<double, RnnGenome::kNodes> hidden{};
  std::array<double, RnnGenome::kNodes> output{};

  static RnnState initial() {
    RnnState s;
    s.hidden.fill(1.0);
    s.output.fill(1.0);
    return s;
  }

  bool operator==(const RnnState&) const = default;
};

// What one network step decoded to.
struct DecodedAction {
  int gear_id = 1;
  Placement placement = Placement::Linear;
  bool continue_adding = true;

  bool operator==(const DecodedAction&) const = default;
};

struct TraceStep {
  std::array<double, RnnGenome::kNodes> input{};
  std::array<double, RnnGenome::kNodes> hidden{};
  std::array<double, RnnGenome::kNodes> output{};
  DecodedAction action;

  bool operator==(const TraceStep&) const = default;
};

// One record per emitted gear, step-indexed.
struct ActivationTrace {
  std::vector<TraceStep> steps;

  bool operator==(const ActivationTrace&) const = default;
};

struct DecodeResult {
  std::vector<PlacementStep> steps;  // always 2..6 entries
  ActivationTrace trace;
};

// One forward step: hidden' = tanh(Wx + Rh + b) with x = previous output,
// then gear nodes = softmax over 6 logits and control nodes = tanh. The
// returned state holds both the new hidden vector and the full 8-node
// output, which feeds the next step.
RnnState rnn_step(const RnnGenome& genome, const RnnState& state);

// Runs the network from the all-ones state until it signals stop. Gear id is
// the argmax of the six softmax nodes (ties break to the lowest id). A stop
// signal before two gears is overridden; emission always halts after six.
// Total over all genomes and fully deterministic.
DecodeResult decode(const RnnGenome& genome);

// Every gene i.i.d. uniform on [-1, 1].
RnnGenome random_genome(RngStream& rng);

}  // namespace gearevo
