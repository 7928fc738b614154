#ifndef VARIETAL_ALGEBRA_CONGRUENCE_HPP_
#define VARIETAL_ALGEBRA_CONGRUENCE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "closure.hpp"
#include "finite_algebra.hpp"

namespace varietal {

  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n), _rank(n, 0) {
      std::iota(_parent.begin(), _parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    // Returns false if x and y were already in the same block.
    bool unite(std::size_t x, std::size_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      if (_rank[x] < _rank[y]) {
        std::swap(x, y);
      }
      _parent[y] = x;
      if (_rank[x] == _rank[y]) {
        ++_rank[x];
      }
      return true;
    }

    std::size_t size() const noexcept {
      return _parent.size();
    }

   private:
    std::vector<std::size_t>   _parent;
    std::vector<std::uint8_t>  _rank;
  };

  // An equivalence relation on {0..n-1} with canonical block labels: blocks
  // are numbered in order of their least element.
  class Congruence {
   public:
    Congruence() = default;

    // Labels may be arbitrary; they are canonicalised.
    explicit Congruence(std::vector<std::size_t> const& labels)
        : _block(labels.size()) {
      std::vector<std::size_t> rename;
      std::vector<bool>        have;
      std::size_t              next = 0;
      std::size_t              max_label
          = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
      rename.assign(max_label + 1, 0);
      have.assign(max_label + 1, false);
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!have[labels[i]]) {
          have[labels[i]]   = true;
          rename[labels[i]] = next++;
        }
        _block[i] = rename[labels[i]];
      }
      _num_blocks = next;
    }

    static Congruence from_union_find(UnionFind& uf) {
      std::vector<std::size_t> labels(uf.size());
      for (std::size_t i = 0; i < uf.size(); ++i) {
        labels[i] = uf.find(i);
      }
      return Congruence(labels);
    }

    static Congruence identity(std::size_t n) {
      std::vector<std::size_t> labels(n);
      std::iota(labels.begin(), labels.end(), std::size_t{0});
      return Congruence(labels);
    }

    static Congruence total(std::size_t n) {
      return Congruence(std::vector<std::size_t>(n, 0));
    }

    std::size_t universe_size() const noexcept {
      return _block.size();
    }
    std::size_t num_blocks() const noexcept {
      return _num_blocks;
    }
    std::size_t block_of(std::size_t x) const {
      return _block[x];
    }
    std::vector<std::size_t> const& labels() const noexcept {
      return _block;
    }

    bool related(std::size_t x, std::size_t y) const {
      return _block[x] == _block[y];
    }

    bool is_identity() const noexcept {
      return _num_blocks == _block.size();
    }
    bool is_total() const noexcept {
      return _num_blocks <= 1;
    }

    // Blocks sorted by least element, each sorted ascending.
    std::vector<std::vector<std::size_t>> blocks() const {
      std::vector<std::vector<std::size_t>> out(_num_blocks);
      for (std::size_t i = 0; i < _block.size(); ++i) {
        out[_block[i]].push_back(i);
      }
      return out;
    }

    // Number of ordered pairs (x, y), x != y, in the relation.
    std::size_t nontrivial_pairs() const {
      std::vector<std::size_t> sz(_num_blocks, 0);
      for (auto b : _block) {
        ++sz[b];
      }
      std::size_t n = 0;
      for (auto s : sz) {
        n += s * (s - 1);
      }
      return n;
    }

    // this ⊆ other
    bool refines(Congruence const& other) const {
      std::vector<std::size_t> image(_num_blocks, SIZE_MAX);
      for (std::size_t i = 0; i < _block.size(); ++i) {
        auto& m = image[_block[i]];
        if (m == SIZE_MAX) {
          m = other._block[i];
        } else if (m != other._block[i]) {
          return false;
        }
      }
      return true;
    }

    Congruence meet(Congruence const& other) const {
      std::vector<std::size_t> labels(_block.size());
      for (std::size_t i = 0; i < _block.size(); ++i) {
        labels[i] = _block[i] * other._num_blocks + other._block[i];
      }
      return Congruence(labels);
    }

    // Join as equivalence relations.  Of two congruences this is again a
    // congruence.
    Congruence equivalence_join(Congruence const& other) const {
      UnionFind uf(_block.size());
      std::vector<std::size_t> first_a(_num_blocks, SIZE_MAX),
          first_b(other._num_blocks, SIZE_MAX);
      for (std::size_t i = 0; i < _block.size(); ++i) {
        auto& fa = first_a[_block[i]];
        fa == SIZE_MAX ? void(fa = i) : void(uf.unite(fa, i));
        auto& fb = first_b[other._block[i]];
        fb == SIZE_MAX ? void(fb = i) : void(uf.unite(fb, i));
      }
      return from_union_find(uf);
    }

    friend bool operator==(Congruence const& a, Congruence const& b) {
      return a._block == b._block;
    }
    friend bool operator<(Congruence const& a, Congruence const& b) {
      return a._block < b._block;
    }

   private:
    std::vector<std::size_t> _block;
    std::size_t              _num_blocks = 0;
  };

  // A unary polynomial obtained by fixing all arguments of `op` but the one
  // at `position`.
  struct TranslationStep {
    std::size_t          op       = 0;
    std::size_t          position = 0;
    std::vector<Element> constants;  // arity - 1 entries, in argument order

    template <Algebra A>
    Element apply(A const& alg, Element x) const {
      std::vector<Element> args;
      args.reserve(constants.size() + 1);
      args.insert(args.end(), constants.begin(),
                  constants.begin() + static_cast<std::ptrdiff_t>(position));
      args.push_back(x);
      args.insert(args.end(),
                  constants.begin() + static_cast<std::ptrdiff_t>(position),
                  constants.end());
      return alg.apply(op, args);
    }
  };

  inline TranslationStep make_translation(std::size_t              op,
                                          std::size_t              position,
                                          std::span<Element const> full_args) {
    TranslationStep s;
    s.op       = op;
    s.position = position;
    for (std::size_t k = 0; k < full_args.size(); ++k) {
      if (k != position) {
        s.constants.push_back(full_args[k]);
      }
    }
    return s;
  }

  // Calls visit(fx, fy, op, position, args) for every distinct image pair
  // (f(x), f(y)) of a fundamental translation f of `alg`, operation by
  // operation and position by position.  Constants range over the whole
  // universe of `alg`.
  template <Algebra A, typename Visit>
  void for_each_translation_image(A const&                 alg,
                                  std::span<Element const> universe,
                                  Element                  x,
                                  Element                  y,
                                  Visit&&                  visit,
                                  Budget const&            budget,
                                  std::size_t&             work) {
    Element const tracks[2] = {x, y};
    for (std::size_t op = 0; op < alg.num_ops(); ++op) {
      std::size_t arity = alg.signature(op).arity;
      for (std::size_t p = 0; p < arity; ++p) {
        enumerate_images(
            alg, op, universe, p, std::span<Element const>(tracks, 2),
            [&](std::span<Element const> v, std::span<Element const> args) {
              visit(v[0], v[1], op, p, args);
            },
            budget, work);
      }
    }
  }

  // Least congruence containing every pair: the pairs are merged, and every
  // pair that merges two blocks is pushed through all fundamental
  // translations until nothing new merges.
  template <Algebra A>
  Congruence congruence_from_pairs(
      A const&                                         alg,
      std::span<std::pair<Element, Element> const>    pairs,
      Budget const&                                    budget = Budget{}) {
    std::size_t n = alg.size();
    for (auto [x, y] : pairs) {
      if (x >= n || y >= n) {
        throw std::out_of_range("pair element outside the universe");
      }
    }
    auto                                   universe = all_elements(alg);
    UnionFind                              uf(n);
    std::vector<std::pair<Element, Element>> work_list;
    for (auto [x, y] : pairs) {
      if (uf.unite(x, y)) {
        work_list.emplace_back(x, y);
      }
    }
    std::size_t work = 0;
    while (!work_list.empty()) {
      auto [x, y] = work_list.back();
      work_list.pop_back();
      budget.check_time();
      for_each_translation_image(
          alg, universe, x, y,
          [&](Element fx, Element fy, std::size_t, std::size_t,
              std::span<Element const>) {
            if (uf.unite(fx, fy)) {
              work_list.emplace_back(fx, fy);
            }
          },
          budget, work);
    }
    return Congruence::from_union_find(uf);
  }

  template <Algebra A>
  Congruence principal_congruence(A const&      alg,
                                  Element       a,
                                  Element       b,
                                  Budget const& budget = Budget{}) {
    std::pair<Element, Element> p{a, b};
    return congruence_from_pairs(
        alg, std::span<std::pair<Element, Element> const>(&p, 1), budget);
  }

  // Exhaustive compatibility test: every translation maps related pairs to
  // related pairs.  Checking generating pairs (x, block leader) suffices.
  template <Algebra A>
  bool is_compatible(A const&          alg,
                     Congruence const& theta,
                     Budget const&     budget = Budget{}) {
    auto        universe = all_elements(alg);
    std::size_t work     = 0;
    bool        ok       = true;
    for (auto const& block : theta.blocks()) {
      for (std::size_t i = 1; i < block.size() && ok; ++i) {
        for_each_translation_image(
            alg, universe, block[0], block[i],
            [&](Element fx, Element fy, std::size_t, std::size_t,
                std::span<Element const>) {
              if (!theta.related(fx, fy)) {
                ok = false;
              }
            },
            budget, work);
      }
    }
    return ok;
  }

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_CONGRUENCE_HPP_
