// JSON forms of the library's results.  Needs nlohmann/json (vendored as
// <json.hpp>).

#ifndef VARIETAL_IO_JSON_HPP_
#define VARIETAL_IO_JSON_HPP_

#include <json.hpp>

#include <cstddef>
#include <string>

#include "varietal/algebra/congruence.hpp"
#include "varietal/algebra/depth.hpp"
#include "varietal/algebra/lattice.hpp"
#include "varietal/at/algebra.hpp"
#include "varietal/bn/verify.hpp"

namespace varietal::io {

  using nlohmann::json;

  inline constexpr int schema_version = 1;

  // {"blocks": [[...], ...]}, blocks sorted by least element.
  inline json to_json(Congruence const& c) {
    json blocks = json::array();
    for (auto const& b : c.blocks()) {
      blocks.push_back(b);
    }
    return json{{"blocks", blocks}};
  }

  // {"source": [a, b], "cap": k, "pairs": [{"x", "y", "depth"}, ...]} in
  // discovery order, which is breadth-first and deterministic.
  inline json to_json(PairDepthGraph const& g) {
    json pairs = json::array();
    for (auto const& e : g.entries()) {
      pairs.push_back({{"x", e.pair.lo}, {"y", e.pair.hi}, {"depth", e.depth}});
    }
    return json{{"source", {g.source().first, g.source().second}},
                {"cap", g.cap()},
                {"pairs", pairs}};
  }

  inline json to_json(at::ATAlgebra const& alg) {
    json ops = json::array();
    for (auto const& op : alg.ops()) {
      ops.push_back({{"symbol", op.symbol}, {"arity", op.arity}});
    }
    json elements = json::array();
    for (Element x = 0; x < alg.size(); ++x) {
      elements.push_back(alg.codec().name(x));
    }
    return json{{"size", alg.size()}, {"ops", ops}, {"elements", elements}};
  }

  inline json to_json(FiniteLattice const& l) {
    return json{{"size", l.size}, {"join", l.join}, {"meet", l.meet}};
  }

  // Wall-clock time is only included on request so that identical runs
  // produce identical bytes.
  inline json to_json(bn::Report const& r, bool timing = false) {
    json values = json::object();
    for (auto const& [k, v] : r.values) {
      values[k] = v;
    }
    json out{{"lemma", r.lemma},
             {"n", r.n},
             {"pass", r.passed()},
             {"status", bn::to_string(r.status)},
             {"witnesses", r.witnesses},
             {"counterexamples", r.counterexamples},
             {"values", values},
             {"stats",
              {{"universe", r.universe},
               {"pairs", r.pairs},
               {"seconds", timing ? json(r.seconds) : json(nullptr)}}}};
    if (!r.note.empty()) {
      out["note"] = r.note;
    }
    return out;
  }

}  // namespace varietal::io

#endif  // VARIETAL_IO_JSON_HPP_
