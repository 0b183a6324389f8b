#include "depmine/relations.hpp"

#include <json.hpp>

#include "depmine/errors.hpp"

namespace depmine {

RelationCounts count_relations(const EventLog& log) {
  RelationCounts counts;
  counts.n = log.alphabet.size();
  counts.freq.assign(static_cast<std::size_t>(counts.n), 0);
  counts.direct = Grid<std::int64_t>(counts.n, counts.n, 0);
  counts.repeat2 = Grid<std::int64_t>(counts.n, counts.n, 0);

  for (const Trace& t : log.traces) {
    const auto& ev = t.events;
    for (std::size_t k = 0; k < ev.size(); ++k) {
      counts.freq[static_cast<std::size_t>(ev[k])] += t.count;
      if (k + 1 < ev.size()) counts.direct(ev[k], ev[k + 1]) += t.count;
      if (k + 2 < ev.size() && ev[k] == ev[k + 2]) counts.repeat2(ev[k], ev[k + 1]) += t.count;
    }
  }
  return counts;
}

EventuallyFollows eventually_follows(const EventLog& log) {
  EventuallyFollows ef;
  ef.n = log.alphabet.size();
  ef.fl = Grid<std::uint8_t>(ef.n, ef.n, 0);
  // seen[a] = 1 once a has occurred earlier in the current trace; every later
  // event y then yields the pair (a, y).
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(ef.n), 0);
  for (const Trace& t : log.traces) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int e : t.events) {
      for (int a = 0; a < ef.n; ++a)
        if (seen[static_cast<std::size_t>(a)]) ef.fl(a, e) = 1;
      seen[static_cast<std::size_t>(e)] = 1;
    }
  }
  return ef;
}

std::string relations_to_json(const RelationCounts& counts, const Alphabet& alphabet) {
  if (alphabet.size() != counts.n) throw ModelError("alphabet size does not match counts");
  nlohmann::ordered_json j;
  j["tasks"] = alphabet.names();
  j["freq"] = counts.freq;
  auto matrix = [&](const Grid<std::int64_t>& g) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < g.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int k = 0; k < g.cols(); ++k) row.push_back(g(i, k));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["direct"] = matrix(counts.direct);
  j["repeat2"] = matrix(counts.repeat2);
  return j.dump(2) + "\n";
}

}  // namespace depmine
