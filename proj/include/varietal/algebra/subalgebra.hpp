#ifndef VARIETAL_ALGEBRA_SUBALGEBRA_HPP_
#define VARIETAL_ALGEBRA_SUBALGEBRA_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "finite_algebra.hpp"

namespace varietal {

  // A closed subset of an ambient algebra, re-indexed as 0..m-1 in the
  // sorted order of the ambient elements.  Polynomials of the view only use
  // constants from the subset.
  template <Algebra Ambient>
  class Subalgebra {
   public:
    Subalgebra(Ambient const& ambient, std::vector<Element> universe)
        : _ambient(&ambient), _universe(std::move(universe)) {
      std::sort(_universe.begin(), _universe.end());
      _universe.erase(std::unique(_universe.begin(), _universe.end()),
                      _universe.end());
      if (_universe.empty()) {
        throw std::invalid_argument("empty subuniverse");
      }
      _local.reserve(_universe.size());
      for (std::size_t i = 0; i < _universe.size(); ++i) {
        _local.emplace(_universe[i], i);
      }
    }

    Ambient const& ambient() const noexcept {
      return *_ambient;
    }

    std::vector<Element> const& universe() const noexcept {
      return _universe;
    }

    Element global(Element local) const {
      return _universe[local];
    }

    std::optional<Element> local(Element global) const {
      auto it = _local.find(global);
      if (it == _local.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    Element local_or_throw(Element global) const {
      auto v = local(global);
      if (!v) {
        throw std::logic_error("element " + std::to_string(global)
                               + " is outside the subuniverse");
      }
      return *v;
    }

    bool contains(Element global) const {
      return _local.count(global) != 0;
    }

    std::uint64_t size() const noexcept {
      return _universe.size();
    }
    std::size_t num_ops() const {
      return _ambient->num_ops();
    }
    Signature const& signature(std::size_t op) const {
      return _ambient->signature(op);
    }

    Element apply(std::size_t op, std::span<Element const> args) const {
      std::vector<Element> g(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) {
        g[k] = _universe[args[k]];
      }
      return local_or_throw(_ambient->apply(op, g));
    }

    bool prefix_capable(std::size_t op) const {
      return _ambient->prefix_capable(op);
    }
    std::size_t prefix_width() const {
      return _ambient->prefix_width();
    }
    void prefix_start(std::size_t op, std::span<PrefixWord> state) const {
      _ambient->prefix_start(op, state);
    }
    void prefix_advance(std::size_t           op,
                        std::span<PrefixWord> state,
                        std::size_t           depth,
                        Element               x) const {
      _ambient->prefix_advance(op, state, depth, _universe[x]);
    }
    std::optional<Element> prefix_value(std::size_t                 op,
                                        std::span<PrefixWord const> state) const {
      auto v = _ambient->prefix_value(op, state);
      if (!v) {
        return std::nullopt;
      }
      return local_or_throw(*v);
    }

   private:
    Ambient const*                       _ambient;
    std::vector<Element>                 _universe;
    std::unordered_map<Element, Element> _local;
  };

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_SUBALGEBRA_HPP_
