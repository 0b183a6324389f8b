#include "depmine/measures.hpp"

#include <json.hpp>

#include "depmine/errors.hpp"

namespace depmine {

DependencyMeasures dependency_measures(const RelationCounts& counts) {
  DependencyMeasures meas;
  meas.n = counts.n;
  meas.arc = Grid<double>(counts.n, counts.n, 0.0);
  meas.self_loop.assign(static_cast<std::size_t>(counts.n), 0.0);
  meas.two_loop = Grid<double>(counts.n, counts.n, 0.0);

  for (int i = 0; i < counts.n; ++i) {
    std::int64_t self = counts.direct(i, i);
    meas.self_loop[static_cast<std::size_t>(i)] =
        static_cast<double>(self) / static_cast<double>(self + 1);
    for (int j = 0; j < counts.n; ++j) {
      if (i == j) continue;
      std::int64_t ij = counts.direct(i, j);
      std::int64_t ji = counts.direct(j, i);
      meas.arc(i, j) = static_cast<double>(ij - ji) / static_cast<double>(ij + ji + 1);
      std::int64_t rep = counts.repeat2(i, j) + counts.repeat2(j, i);
      meas.two_loop(i, j) = static_cast<double>(rep) / static_cast<double>(rep + 1);
    }
  }
  return meas;
}

std::string measures_to_json(const DependencyMeasures& meas, const Alphabet& alphabet) {
  if (alphabet.size() != meas.n) throw ModelError("alphabet size does not match measures");
  nlohmann::ordered_json j;
  j["tasks"] = alphabet.names();
  auto matrix = [&](const Grid<double>& g) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < g.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int k = 0; k < g.cols(); ++k) row.push_back(g(i, k));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["arc"] = matrix(meas.arc);
  j["self_loop"] = meas.self_loop;
  j["two_loop"] = matrix(meas.two_loop);
  return j.dump(2) + "\n";
}

}  // namespace depmine
