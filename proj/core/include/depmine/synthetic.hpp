#pragma once

#include <cstdint>
#include <vector>

#include "depmine/event_log.hpp"

namespace depmine {

enum class BlockKind : std::uint8_t { Sequence, Choice, Concurrency };

// Block-structured generator model: blocks run one after another, each over
// its own share of the alphabet.  A Sequence block emits its tasks in order,
// a Choice block emits exactly one of them, a Concurrency block emits all of
// them in a random interleaving.  After a block runs, it repeats with
// probability `loop_probability` (capped).
struct SyntheticSpec {
  int alphabet_size = 8;
  std::vector<BlockKind> blocks = {BlockKind::Sequence};
  double loop_probability = 0.0;
  int max_block_repeats = 4;
};

// Deterministic for a given (spec, n_traces, noise_rate, seed).  Noise is
// applied per event as swap/skip/duplicate, each with probability
// noise_rate/3.  The result has unique endpoints (artificial ones are added
// when noise breaks the natural ones).
EventLog generate_synthetic_log(const SyntheticSpec& spec, std::int64_t n_traces,
                                double noise_rate, std::uint64_t seed);

}  // namespace depmine
