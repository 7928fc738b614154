// Finite algebras over the universe {0, ..., size - 1}.
//
// Every algebra type used by the generic algorithms in this directory
// (FiniteAlgebra, PowerAlgebra, Subalgebra) exposes the same surface:
//
//   size(), num_ops(), signature(op), apply(op, args)
//
// plus an optional "prefix evaluation" interface.  A prefix state records
// the effect of the first few arguments of an operation; it is settled once
// the remaining arguments can no longer change the result.  The enumerators
// in closure.hpp use it to merge argument prefixes with identical effect,
// which is what keeps arity-5 operations tractable.

#ifndef VARIETAL_ALGEBRA_FINITE_ALGEBRA_HPP_
#define VARIETAL_ALGEBRA_FINITE_ALGEBRA_HPP_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "budget.hpp"

namespace varietal {

  using Element    = std::uint64_t;
  using PrefixWord = std::uint64_t;

  inline constexpr PrefixWord settled_bit = PrefixWord{1} << 63;

  struct Signature {
    std::string symbol;
    std::size_t arity = 0;
  };

  template <typename A>
  concept Algebra = requires(A const&                 alg,
                             std::size_t              op,
                             std::span<Element const> args,
                             std::span<PrefixWord>    state,
                             Element                  x) {
    { alg.size() } -> std::convertible_to<std::uint64_t>;
    { alg.num_ops() } -> std::convertible_to<std::size_t>;
    { alg.signature(op) } -> std::convertible_to<Signature const&>;
    { alg.apply(op, args) } -> std::same_as<Element>;
    { alg.prefix_capable(op) } -> std::same_as<bool>;
    { alg.prefix_width() } -> std::convertible_to<std::size_t>;
    alg.prefix_start(op, state);
    alg.prefix_advance(op, state, std::size_t{0}, x);
    { alg.prefix_value(op, std::span<PrefixWord const>(state)) }
        -> std::same_as<std::optional<Element>>;
  };

  // Multiplies with an overflow check; used for n^k table sizes.
  inline std::optional<std::uint64_t> checked_pow(std::uint64_t base,
                                                  std::size_t   exponent) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
      if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
        return std::nullopt;
      }
      r *= base;
    }
    return r;
  }

  class Operation {
   public:
    using Function = std::function<Element(std::span<Element const>)>;

    // Evaluated on demand; no prefix evaluation.
    static Operation lazy(std::string symbol, std::size_t arity, Function f) {
      Operation op;
      op._sig = {std::move(symbol), arity};
      op._fn  = std::move(f);
      return op;
    }

    // Dense table indexed lexicographically (first argument most
    // significant).
    static Operation from_table(std::string          symbol,
                                std::size_t          arity,
                                std::uint64_t        universe,
                                std::vector<Element> table) {
      auto expected = checked_pow(universe, arity);
      if (!expected || *expected != table.size()) {
        throw std::invalid_argument("operation '" + symbol
                                    + "': table has wrong length");
      }
      for (auto v : table) {
        if (v >= universe) {
          throw std::invalid_argument("operation '" + symbol
                                      + "': output outside the universe");
        }
      }
      Operation op;
      op._sig      = {std::move(symbol), arity};
      op._universe = universe;
      op._table    = std::move(table);
      op.build_prefix_levels();
      return op;
    }

    static Operation tabulate(std::string   symbol,
                              std::size_t   arity,
                              std::uint64_t universe,
                              Function const& f,
                              std::size_t   max_entries = std::size_t{1} << 26) {
      auto total = checked_pow(universe, arity);
      if (!total || *total > max_entries) {
        throw BudgetExceeded("operation '" + symbol
                             + "' too large to tabulate");
      }
      std::vector<Element> table(*total);
      std::vector<Element> args(arity, 0);
      for (std::uint64_t i = 0; i < *total; ++i) {
        std::uint64_t rest = i;
        for (std::size_t k = arity; k-- > 0;) {
          args[k] = rest % universe;
          rest /= universe;
        }
        table[i] = f(args);
      }
      return from_table(std::move(symbol), arity, universe, std::move(table));
    }

    Signature const& signature() const noexcept {
      return _sig;
    }

    std::string const& symbol() const noexcept {
      return _sig.symbol;
    }

    std::size_t arity() const noexcept {
      return _sig.arity;
    }

    bool dense() const noexcept {
      return !_fn;
    }

    std::vector<Element> const& table() const noexcept {
      return _table;
    }

    Element operator()(std::span<Element const> args) const {
      if (_fn) {
        return _fn(args);
      }
      std::uint64_t off = 0;
      for (auto x : args) {
        off = off * _universe + x;
      }
      return _table[off];
    }

    PrefixWord prefix_start() const {
      return word_at(0, 0);
    }

    PrefixWord prefix_advance(PrefixWord w, std::size_t depth, Element x) const {
      if (w & settled_bit) {
        return w;
      }
      return word_at(depth + 1, w * _universe + x);
    }

   private:
    static constexpr Element varies = std::numeric_limits<Element>::max();

    PrefixWord word_at(std::size_t level, std::uint64_t offset) const {
      Element c = _levels[level][offset];
      return c == varies ? offset : (settled_bit | c);
    }

    // _levels[j][p] is the constant value of the table slice under the
    // argument prefix p of length j, or `varies`.
    void build_prefix_levels() {
      std::size_t k = _sig.arity;
      _levels.assign(k + 1, {});
      _levels[k] = _table;
      for (std::size_t j = k; j-- > 0;) {
        auto const& below = _levels[j + 1];
        auto&       here  = _levels[j];
        here.assign(below.size() / (_universe == 0 ? 1 : _universe), varies);
        for (std::size_t p = 0; p < here.size(); ++p) {
          Element c = below[p * _universe];
          for (std::uint64_t x = 1; x < _universe && c != varies; ++x) {
            if (below[p * _universe + x] != c) {
              c = varies;
            }
          }
          here[p] = c;
        }
      }
    }

    Signature                         _sig;
    std::uint64_t                     _universe = 0;
    Function                          _fn;
    std::vector<Element>              _table;
    std::vector<std::vector<Element>> _levels;
  };

  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;

    FiniteAlgebra(std::uint64_t size, std::vector<Operation> ops)
        : _size(size), _ops(std::move(ops)) {
      if (size == 0) {
        throw std::invalid_argument("an algebra needs a nonempty universe");
      }
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (!_index.emplace(_ops[i].symbol(), i).second) {
          throw std::invalid_argument("duplicate operation symbol '"
                                      + _ops[i].symbol() + "'");
        }
      }
    }

    std::uint64_t size() const noexcept {
      return _size;
    }

    std::size_t num_ops() const noexcept {
      return _ops.size();
    }

    Signature const& signature(std::size_t op) const {
      return _ops[op].signature();
    }

    Operation const& operation(std::size_t op) const {
      return _ops[op];
    }

    std::vector<Operation> const& operations() const noexcept {
      return _ops;
    }

    std::optional<std::size_t> find(std::string const& symbol) const {
      auto it = _index.find(symbol);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::size_t index_of(std::string const& symbol) const {
      auto i = find(symbol);
      if (!i) {
        throw std::out_of_range("unknown operation symbol '" + symbol + "'");
      }
      return *i;
    }

    Element apply(std::size_t op, std::span<Element const> args) const {
      return _ops[op](args);
    }

    bool prefix_capable(std::size_t op) const {
      return _ops[op].dense();
    }

    std::size_t prefix_width() const noexcept {
      return 1;
    }

    void prefix_start(std::size_t op, std::span<PrefixWord> state) const {
      state[0] = _ops[op].prefix_start();
    }

    void prefix_advance(std::size_t           op,
                        std::span<PrefixWord> state,
                        std::size_t           depth,
                        Element               x) const {
      state[0] = _ops[op].prefix_advance(state[0], depth, x);
    }

    std::optional<Element> prefix_value(std::size_t                 op,
                                        std::span<PrefixWord const> state) const {
      (void) op;
      if (state[0] & settled_bit) {
        return state[0] & ~settled_bit;
      }
      return std::nullopt;
    }

   private:
    std::uint64_t                                _size = 0;
    std::vector<Operation>                       _ops;
    std::unordered_map<std::string, std::size_t> _index;
  };

  // The subalgebra of `alg` on the closed set `universe` (sorted), with
  // every operation tabulated.  Element i of the result is universe[i].
  template <Algebra A>
  FiniteAlgebra restrict_to(A const& alg, std::vector<Element> const& universe) {
    std::unordered_map<Element, Element> local;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      local.emplace(universe[i], i);
    }
    std::vector<Operation> ops;
    for (std::size_t op = 0; op < alg.num_ops(); ++op) {
      auto const& sig = alg.signature(op);
      std::vector<Element> buf(sig.arity);
      ops.push_back(Operation::tabulate(
          sig.symbol, sig.arity, universe.size(),
          [&](std::span<Element const> args) {
            for (std::size_t k = 0; k < args.size(); ++k) {
              buf[k] = universe[args[k]];
            }
            Element v  = alg.apply(op, buf);
            auto    it = local.find(v);
            if (it == local.end()) {
              throw std::invalid_argument(
                  "restrict_to: set is not closed under '" + sig.symbol + "'");
            }
            return it->second;
          }));
    }
    return FiniteAlgebra(universe.size(), std::move(ops));
  }

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_FINITE_ALGEBRA_HPP_
