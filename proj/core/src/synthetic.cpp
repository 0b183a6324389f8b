#include "depmine/synthetic.hpp"

#include <string>
#include <utility>

#include "depmine/errors.hpp"
#include "depmine/rng.hpp"

namespace depmine {

namespace {

std::string task_name(int index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "t" + std::to_string(index);
}

void emit_block(BlockKind kind, const std::vector<int>& tasks, Rng& rng, std::vector<int>& out) {
  switch (kind) {
    case BlockKind::Sequence:
      out.insert(out.end(), tasks.begin(), tasks.end());
      break;
    case BlockKind::Choice:
      out.push_back(tasks[rng.next_below(tasks.size())]);
      break;
    case BlockKind::Concurrency: {
      std::vector<int> order = tasks;
      for (std::size_t k = order.size(); k > 1; --k)
        std::swap(order[k - 1], order[rng.next_below(k)]);
      out.insert(out.end(), order.begin(), order.end());
      break;
    }
  }
}

void apply_noise(std::vector<int>& events, double noise_rate, Rng& rng) {
  std::vector<int> noisy;
  noisy.reserve(events.size() + 2);
  for (std::size_t k = 0; k < events.size(); ++k) {
    double r = rng.next_double();
    if (r >= noise_rate) {
      noisy.push_back(events[k]);
      continue;
    }
    double kind = r / noise_rate;  // uniform in [0,1) given the noise branch
    if (kind < 1.0 / 3.0) {
      // Swap with the following event (no-op at the last position).
      if (k + 1 < events.size()) {
        noisy.push_back(events[k + 1]);
        noisy.push_back(events[k]);
        ++k;
      } else {
        noisy.push_back(events[k]);
      }
    } else if (kind < 2.0 / 3.0) {
      // Skip: drop the event.
    } else {
      noisy.push_back(events[k]);
      noisy.push_back(events[k]);
    }
  }
  if (noisy.empty()) noisy.push_back(events.back());  // keep traces non-empty
  events = std::move(noisy);
}

}  // namespace

EventLog generate_synthetic_log(const SyntheticSpec& spec, std::int64_t n_traces,
                                double noise_rate, std::uint64_t seed) {
  if (spec.alphabet_size < 2) throw GenerateError("alphabet size must be at least 2");
  if (n_traces < 1) throw GenerateError("trace count must be at least 1");
  if (noise_rate < 0.0 || noise_rate > 1.0) throw GenerateError("noise rate must be in [0,1]");
  std::vector<BlockKind> blocks = spec.blocks;
  if (blocks.empty()) blocks.push_back(BlockKind::Sequence);
  if (static_cast<int>(blocks.size()) > spec.alphabet_size)
    throw GenerateError("spec has more blocks than tasks; no executable path");

  EventLog raw;
  // Even round-robin split of the alphabet over the blocks.
  std::vector<std::vector<int>> block_tasks(blocks.size());
  for (int t = 0; t < spec.alphabet_size; ++t) {
    int id = raw.alphabet.intern(task_name(t));
    block_tasks[static_cast<std::size_t>(t) % blocks.size()].push_back(id);
  }

  Rng rng(seed);
  for (std::int64_t i = 0; i < n_traces; ++i) {
    std::vector<int> events;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      int repeats = 0;
      do {
        emit_block(blocks[b], block_tasks[b], rng, events);
      } while (spec.loop_probability > 0.0 && repeats++ < spec.max_block_repeats &&
               rng.next_bool(spec.loop_probability));
    }
    if (noise_rate > 0.0) apply_noise(events, noise_rate, rng);
    raw.add_trace(std::move(events));
  }
  return ensure_unique_endpoints(raw);
}

}  // namespace depmine
