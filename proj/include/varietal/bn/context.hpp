// The subpowers B_n = Sg(a, b_i, d_i | 2 <= i <= n) of A(T)^n, where
//
//   b_i = (D, ..., D, 0, ..., 0)     D in coordinates 1..i
//   d_i = (D, ..., D, ∂D, 0, ..., 0) ∂D in coordinate i
//   c_i = (0, D, ..., D, 0, ..., 0)  D in coordinates 2..i
//   a   = b_1
//
// Every coordinate of an element of B_n lies in the subuniverse P of A(T)
// generated by the coordinate values of the generators, so the closure is
// computed inside P^n with P tabulated densely.  Coordinates are 1-based in
// names and 0-based in code.

#ifndef VARIETAL_BN_CONTEXT_HPP_
#define VARIETAL_BN_CONTEXT_HPP_

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varietal/algebra/budget.hpp"
#include "varietal/algebra/closure.hpp"
#include "varietal/algebra/finite_algebra.hpp"
#include "varietal/algebra/power.hpp"
#include "varietal/algebra/subalgebra.hpp"
#include "varietal/at/algebra.hpp"
#include "varietal/at/element.hpp"

namespace varietal::bn {

  using PowerOfP = PowerAlgebra<FiniteAlgebra>;
  using SubOfP   = Subalgebra<PowerOfP>;
  using Tuple    = std::vector<at::ATElement>;

  inline Tuple b_tuple(std::size_t n, std::size_t i) {
    Tuple t(n, at::zero());
    for (std::size_t l = 0; l < i && l < n; ++l) {
      t[l] = at::D();
    }
    return t;
  }

  inline Tuple c_tuple(std::size_t n, std::size_t i) {
    Tuple t = b_tuple(n, i);
    t[0]    = at::zero();
    return t;
  }

  inline Tuple d_tuple(std::size_t n, std::size_t i) {
    Tuple t  = b_tuple(n, i);
    t[i - 1] = at::bar(at::D());
    return t;
  }

  class BnContext {
   public:
    // Which generators to use; `omit_d` drops d_k from the generating set.
    BnContext(at::ATAlgebra const&       algebra,
              std::size_t                n,
              std::optional<std::size_t> omit_d = std::nullopt,
              Budget const&              budget = Budget{})
        : _at(algebra), _n(n) {
      if (n < 2) {
        throw std::invalid_argument("B_n needs n >= 2");
      }
      if (omit_d && (*omit_d < 2 || *omit_d > n)) {
        throw std::invalid_argument("omitted index must lie in [2, n]");
      }
      std::vector<Tuple> gens;
      gens.push_back(b_tuple(n, 1));
      for (std::size_t i = 2; i <= n; ++i) {
        gens.push_back(b_tuple(n, i));
        if (!omit_d || *omit_d != i) {
          gens.push_back(d_tuple(n, i));
        }
      }

      // P = Sg^{A(T)}(coordinate values of the generators, plus 0 for the
      // c_i and the zero tuple).
      std::vector<Element> coords{_at.codec().encode(at::zero())};
      for (auto const& g : gens) {
        for (auto const& x : g) {
          coords.push_back(_at.codec().encode(x));
        }
      }
      _p_universe = generate_subuniverse(
          _at.carrier(), std::span<Element const>(coords), budget);
      _base  = std::make_unique<FiniteAlgebra>(
          restrict_to(_at.carrier(), _p_universe));
      _power = std::make_unique<PowerOfP>(*_base, n);

      std::vector<Element> gen_idx;
      for (auto const& g : gens) {
        gen_idx.push_back(encode(g));
      }
      auto universe = generate_subuniverse(
          *_power, std::span<Element const>(gen_idx), budget);
      _sub = std::make_unique<SubOfP>(*_power, std::move(universe));
      _generators = gen_idx;
    }

    BnContext(BnContext&&)            = default;
    BnContext& operator=(BnContext&&) = default;

    std::size_t n() const noexcept {
      return _n;
    }
    at::ATAlgebra const& at_algebra() const noexcept {
      return _at;
    }
    // P as sorted A(T) indices; element i of the base algebra is
    // p_universe()[i].
    std::vector<Element> const& p_universe() const noexcept {
      return _p_universe;
    }
    FiniteAlgebra const& base() const noexcept {
      return *_base;
    }
    PowerOfP const& power() const noexcept {
      return *_power;
    }
    // B_n with local indices 0..|B_n|-1.
    SubOfP const& algebra() const noexcept {
      return *_sub;
    }
    std::size_t size() const noexcept {
      return _sub->size();
    }
    // Generators as power-algebra indices.
    std::vector<Element> const& generators() const noexcept {
      return _generators;
    }

    // Power-algebra index of an A(T)-tuple; throws if a coordinate is
    // outside P.
    Element encode(Tuple const& t) const {
      if (t.size() != _n) {
        throw std::invalid_argument("tuple has the wrong length");
      }
      std::vector<Element> digits(_n);
      for (std::size_t l = 0; l < _n; ++l) {
        Element g  = _at.codec().encode(t[l]);
        auto    it = std::lower_bound(_p_universe.begin(), _p_universe.end(), g);
        if (it == _p_universe.end() || *it != g) {
          throw std::out_of_range("coordinate " + at::to_string(t[l])
                                  + " lies outside the coordinate algebra");
        }
        digits[l] = static_cast<Element>(it - _p_universe.begin());
      }
      return _power->codec().encode(digits);
    }

    Tuple decode(Element power_index) const {
      auto  digits = _power->codec().decode(power_index);
      Tuple t;
      for (auto d : digits) {
        t.push_back(_at.codec().decode(_p_universe[d]));
      }
      return t;
    }

    // Local B_n index of a tuple, if it is in B_n.
    std::optional<Element> local(Tuple const& t) const {
      return _sub->local(encode(t));
    }
    Element local_or_throw(Tuple const& t) const {
      auto v = local(t);
      if (!v) {
        throw std::logic_error(name(t) + " is not in the subalgebra");
      }
      return *v;
    }
    Tuple tuple(Element local) const {
      return decode(_sub->global(local));
    }

    static std::string name(Tuple const& t) {
      std::string s = "(";
      for (std::size_t l = 0; l < t.size(); ++l) {
        s += (l ? "," : "") + at::to_string(t[l]);
      }
      return s + ")";
    }
    std::string name_local(Element local) const {
      return name(tuple(local));
    }

    // Named elements (local indices).  b(1) == a; c(1) is the zero tuple.
    Element a() const {
      return local_or_throw(b_tuple(_n, 1));
    }
    Element zero() const {
      return local_or_throw(Tuple(_n, at::zero()));
    }
    Element b(std::size_t i) const {
      check_index(i, 1);
      return local_or_throw(b_tuple(_n, i));
    }
    Element c(std::size_t i) const {
      check_index(i, 1);
      return local_or_throw(c_tuple(_n, i));
    }
    Element d(std::size_t i) const {
      check_index(i, 2);
      return local_or_throw(d_tuple(_n, i));
    }

    std::size_t op_index(std::string const& symbol) const {
      return _base->index_of(symbol);
    }

   private:
    void check_index(std::size_t i, std::size_t lowest) const {
      if (i < lowest || i > _n) {
        throw std::out_of_range("index " + std::to_string(i)
                                + " outside [" + std::to_string(lowest) + ", "
                                + std::to_string(_n) + "]");
      }
    }

    at::ATAlgebra                  _at;
    std::size_t                    _n;
    std::vector<Element>           _p_universe;
    std::unique_ptr<FiniteAlgebra> _base;
    std::unique_ptr<PowerOfP>      _power;
    std::unique_ptr<SubOfP>        _sub;
    std::vector<Element>           _generators;
  };

  inline BnContext build_bn(at::ATAlgebra const& algebra,
                            std::size_t          n,
                            Budget const&        budget = Budget{}) {
    return BnContext(algebra, n, std::nullopt, budget);
  }

  // |supp(x)|: coordinates that are not 0.
  inline std::size_t support_size(Tuple const& t) {
    return static_cast<std::size_t>(std::count_if(
        t.begin(), t.end(), [](auto const& x) { return !at::is_zero(x); }));
  }

}  // namespace varietal::bn

#endif  // VARIETAL_BN_CONTEXT_HPP_
