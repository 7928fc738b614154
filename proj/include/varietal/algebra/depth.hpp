// Translation depth of pairs and Maltsev depth.
//
// The pair graph of (a, b) records, for every unordered pair {x, y} of the
// form {p(a), p(b)} with p a composition of fundamental translations, the
// least number of translations needed.  The Maltsev depth of a target pair
// (c, d) is then the least M such that c and d are joined by a chain whose
// links all have depth at most M: a bottleneck path problem.

#ifndef VARIETAL_ALGEBRA_DEPTH_HPP_
#define VARIETAL_ALGEBRA_DEPTH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "closure.hpp"
#include "congruence.hpp"
#include "finite_algebra.hpp"

namespace varietal {

  struct UnorderedPair {
    Element lo = 0;
    Element hi = 0;

    UnorderedPair() = default;
    UnorderedPair(Element x, Element y)
        : lo(std::min(x, y)), hi(std::max(x, y)) {}

    bool trivial() const noexcept {
      return lo == hi;
    }
    bool contains(Element x) const noexcept {
      return lo == x || hi == x;
    }
    Element other(Element x) const noexcept {
      return lo == x ? hi : lo;
    }

    friend bool operator==(UnorderedPair const&, UnorderedPair const&)
        = default;
    friend auto operator<=>(UnorderedPair const&, UnorderedPair const&)
        = default;
  };

  class PairDepthGraph {
   public:
    struct Entry {
      UnorderedPair   pair;
      std::size_t     depth = 0;
      // Index of the pair this one was first reached from, and the
      // translation used; unset for the source.
      std::size_t     parent = npos;
      TranslationStep step;
    };

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    PairDepthGraph(Element a, Element b, std::size_t cap)
        : _source(a, b), _source_ordered(a, b), _cap(cap) {}

    std::pair<Element, Element> source() const noexcept {
      return _source_ordered;
    }
    std::size_t cap() const noexcept {
      return _cap;
    }

    // True if the last layer produced nothing new, so depths are final for
    // every cap.
    bool saturated() const noexcept {
      return _saturated;
    }

    std::vector<Entry> const& entries() const noexcept {
      return _entries;
    }

    std::optional<std::size_t> depth(Element x, Element y) const {
      auto it = _index.find(key(UnorderedPair(x, y)));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return _entries[it->second].depth;
    }

    std::size_t max_depth() const {
      std::size_t m = 0;
      for (auto const& e : _entries) {
        m = std::max(m, e.depth);
      }
      return m;
    }

    // Translations, innermost first, taking the source to {x, y}.
    std::vector<TranslationStep> witness(Element x, Element y) const {
      auto it = _index.find(key(UnorderedPair(x, y)));
      if (it == _index.end()) {
        throw std::out_of_range("pair not reached");
      }
      std::vector<TranslationStep> out;
      for (std::size_t i = it->second; _entries[i].parent != npos;
           i = _entries[i].parent) {
        out.push_back(_entries[i].step);
      }
      std::reverse(out.begin(), out.end());
      return out;
    }

   private:
    template <Algebra A>
    friend PairDepthGraph pair_depth_graph(A const&, Element, Element,
                                           std::size_t, Budget const&);

    static std::uint64_t key(UnorderedPair p) {
      return (p.lo << 32) | p.hi;
    }

    bool add(UnorderedPair p, std::size_t depth, std::size_t parent,
             TranslationStep step) {
      auto [it, fresh] = _index.emplace(key(p), _entries.size());
      if (!fresh) {
        return false;
      }
      _entries.push_back({p, depth, parent, std::move(step)});
      return true;
    }

    UnorderedPair                                   _source;
    std::pair<Element, Element>                     _source_ordered;
    std::size_t                                     _cap;
    bool                                            _saturated = false;
    std::vector<Entry>                              _entries;
    std::unordered_map<std::uint64_t, std::size_t>  _index;
  };

  // Layered breadth-first search from {a, b}.  Layer d + 1 holds the images
  // of layer d under all fundamental translations that were not seen
  // before.  Trivial pairs {x, x} are recorded but not expanded.
  template <Algebra A>
  PairDepthGraph pair_depth_graph(A const&      alg,
                                  Element       a,
                                  Element       b,
                                  std::size_t   cap,
                                  Budget const& budget) {
    if (alg.size() >= (std::uint64_t{1} << 32)) {
      throw BudgetExceeded("pair graphs need a universe below 2^32");
    }
    if (a >= alg.size() || b >= alg.size()) {
      throw std::out_of_range("source pair outside the universe");
    }
    auto           universe = all_elements(alg);
    PairDepthGraph g(a, b, cap);
    g.add(UnorderedPair(a, b), 0, PairDepthGraph::npos, {});

    std::size_t layer_begin = 0;
    std::size_t work        = 0;
    for (std::size_t d = 0; d < cap; ++d) {
      std::size_t layer_end = g._entries.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        UnorderedPair p = g._entries[i].pair;
        if (p.trivial()) {
          continue;
        }
        budget.check_time();
        for_each_translation_image(
            alg, universe, p.lo, p.hi,
            [&](Element fx, Element fy, std::size_t op, std::size_t pos,
                std::span<Element const> args) {
              UnorderedPair q(fx, fy);
              if (g._index.count(PairDepthGraph::key(q))) {
                return;
              }
              g.add(q, d + 1, i, make_translation(op, pos, args));
              budget.check_pairs(g._entries.size());
            },
            budget, work);
      }
      if (g._entries.size() == layer_end) {
        g._saturated = true;
        break;
      }
      layer_begin = layer_end;
    }
    if (!g._saturated) {
      // Saturated also if every pair of the last layer is trivial.
      bool all_trivial = true;
      for (std::size_t i = layer_begin; i < g._entries.size(); ++i) {
        all_trivial = all_trivial && g._entries[i].pair.trivial();
      }
      g._saturated = all_trivial;
    }
    return g;
  }

  template <Algebra A>
  PairDepthGraph pair_depth_graph(A const& alg, Element a, Element b,
                                  std::size_t cap) {
    return pair_depth_graph(alg, a, b, cap, Budget{});
  }

  struct MaltsevDepthResult {
    // Unset when c and d are not joined within the cap.
    std::optional<std::size_t> depth;
    // Lexicographically least chain c = r_1, ..., r_k = d among the chains
    // of optimal bottleneck, and the depth of each link.
    std::vector<Element>     chain;
    std::vector<std::size_t> link_depths;
  };

  // Minimax path over the weighted pair graph.
  inline MaltsevDepthResult minimax_chain(PairDepthGraph const& g,
                                          std::size_t           universe_size,
                                          Element               c,
                                          Element               d) {
    MaltsevDepthResult out;
    if (c == d) {
      out.depth = 0;
      out.chain = {c};
      return out;
    }
    std::vector<std::vector<std::pair<Element, std::size_t>>> adj(universe_size);
    for (auto const& e : g.entries()) {
      if (e.pair.trivial()) {
        continue;
      }
      adj[e.pair.lo].emplace_back(e.pair.hi, e.depth);
      adj[e.pair.hi].emplace_back(e.pair.lo, e.depth);
    }
    for (auto& list : adj) {
      std::sort(list.begin(), list.end());
    }

    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(universe_size, inf);
    using Item = std::pair<std::size_t, Element>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    best[c] = 0;
    queue.emplace(0, c);
    while (!queue.empty()) {
      auto [w, u] = queue.top();
      queue.pop();
      if (w != best[u]) {
        continue;
      }
      for (auto [v, dv] : adj[u]) {
        std::size_t nw = std::max(w, dv);
        if (nw < best[v]) {
          best[v] = nw;
          queue.emplace(nw, v);
        }
      }
    }
    if (best[d] == inf) {
      return out;
    }
    std::size_t const bound = best[d];
    out.depth               = bound;

    // Greedy lexicographically least simple path using links <= bound.
    std::vector<bool> on_path(universe_size, false);
    auto reaches = [&](Element from) {
      std::vector<bool>    seen(on_path);
      std::vector<Element> stack{from};
      seen[from] = true;
      while (!stack.empty()) {
        Element u = stack.back();
        stack.pop_back();
        if (u == d) {
          return true;
        }
        for (auto [v, dv] : adj[u]) {
          if (dv <= bound && !seen[v]) {
            seen[v] = true;
            stack.push_back(v);
          }
        }
      }
      return false;
    };
    Element u = c;
    on_path[u] = true;
    out.chain.push_back(u);
    while (u != d) {
      bool moved = false;
      for (auto [v, dv] : adj[u]) {
        if (dv <= bound && !on_path[v]) {
          on_path[v] = true;
          if (reaches(v)) {
            out.chain.push_back(v);
            out.link_depths.push_back(dv);
            u     = v;
            moved = true;
            break;
          }
          on_path[v] = false;
        }
      }
      if (!moved) {
        throw std::logic_error("minimax_chain: lost the path");
      }
    }
    return out;
  }

  template <Algebra A>
  MaltsevDepthResult maltsev_depth(A const&                    alg,
                                   std::pair<Element, Element> gen,
                                   std::pair<Element, Element> target,
                                   std::size_t                 cap,
                                   Budget const&               budget = Budget{}) {
    if (target.first == target.second) {
      return minimax_chain(PairDepthGraph(gen.first, gen.second, cap),
                           alg.size(), target.first, target.second);
    }
    auto g = pair_depth_graph(alg, gen.first, gen.second, cap, budget);
    return minimax_chain(g, alg.size(), target.first, target.second);
  }

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_DEPTH_HPP_
