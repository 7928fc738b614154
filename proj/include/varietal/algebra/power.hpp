#ifndef VARIETAL_ALGEBRA_POWER_HPP_
#define VARIETAL_ALGEBRA_POWER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "budget.hpp"
#include "finite_algebra.hpp"

namespace varietal {

  // Bijection between tuples over {0..base-1} of fixed length and indices;
  // coordinate 0 is the most significant digit.
  class TupleCodec {
   public:
    TupleCodec(std::uint64_t base, std::size_t length)
        : _base(base), _length(length) {
      auto total = checked_pow(base, length);
      if (!total) {
        throw BudgetExceeded("power universe does not fit in 64 bits");
      }
      _size = *total;
    }

    std::uint64_t base() const noexcept {
      return _base;
    }
    std::size_t length() const noexcept {
      return _length;
    }
    std::uint64_t size() const noexcept {
      return _size;
    }

    Element encode(std::span<Element const> tuple) const {
      Element i = 0;
      for (auto x : tuple) {
        i = i * _base + x;
      }
      return i;
    }

    void decode(Element i, std::span<Element> out) const {
      for (std::size_t k = _length; k-- > 0;) {
        out[k] = i % _base;
        i /= _base;
      }
    }

    std::vector<Element> decode(Element i) const {
      std::vector<Element> out(_length);
      decode(i, out);
      return out;
    }

    Element coordinate(Element i, std::size_t k) const {
      for (std::size_t j = _length - 1; j > k; --j) {
        i /= _base;
      }
      return i % _base;
    }

   private:
    std::uint64_t _base;
    std::size_t   _length;
    std::uint64_t _size;
  };

  // Direct power with coordinatewise operations.  Nothing is tabulated: the
  // universe is the implicit index range of the codec.
  template <Algebra Base>
  class PowerAlgebra {
   public:
    PowerAlgebra(Base const& base, std::size_t exponent,
                 std::uint64_t max_size = ~std::uint64_t{0})
        : _base(&base), _codec(base.size(), exponent) {
      if (exponent == 0) {
        throw std::invalid_argument("power exponent must be at least 1");
      }
      if (_codec.size() > max_size) {
        throw BudgetExceeded("power universe of size "
                             + std::to_string(_codec.size())
                             + " exceeds the configured budget");
      }
      if (base.prefix_width() != 1) {
        throw std::invalid_argument(
            "power of a power: flatten the base algebra first");
      }
    }

    Base const& base() const noexcept {
      return *_base;
    }
    TupleCodec const& codec() const noexcept {
      return _codec;
    }
    std::size_t exponent() const noexcept {
      return _codec.length();
    }

    std::uint64_t size() const noexcept {
      return _codec.size();
    }
    std::size_t num_ops() const {
      return _base->num_ops();
    }
    Signature const& signature(std::size_t op) const {
      return _base->signature(op);
    }

    Element apply(std::size_t op, std::span<Element const> args) const {
      std::size_t const n     = exponent();
      std::size_t const arity = args.size();
      std::vector<Element> decoded(arity * n);
      for (std::size_t j = 0; j < arity; ++j) {
        _codec.decode(args[j], std::span<Element>(decoded).subspan(j * n, n));
      }
      std::vector<Element> coord_args(arity);
      Element              out = 0;
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < arity; ++j) {
          coord_args[j] = decoded[j * n + l];
        }
        out = out * _codec.base() + _base->apply(op, coord_args);
      }
      return out;
    }

    bool prefix_capable(std::size_t op) const {
      return _base->prefix_capable(op);
    }

    std::size_t prefix_width() const noexcept {
      return exponent();
    }

    void prefix_start(std::size_t op, std::span<PrefixWord> state) const {
      for (std::size_t l = 0; l < exponent(); ++l) {
        _base->prefix_start(op, state.subspan(l, 1));
      }
    }

    void prefix_advance(std::size_t           op,
                        std::span<PrefixWord> state,
                        std::size_t           depth,
                        Element               x) const {
      for (std::size_t l = exponent(); l-- > 0;) {
        _base->prefix_advance(op, state.subspan(l, 1), depth,
                              x % _codec.base());
        x /= _codec.base();
      }
    }

    std::optional<Element> prefix_value(std::size_t                 op,
                                        std::span<PrefixWord const> state) const {
      Element out = 0;
      for (std::size_t l = 0; l < exponent(); ++l) {
        auto v = _base->prefix_value(op, state.subspan(l, 1));
        if (!v) {
          return std::nullopt;
        }
        out = out * _codec.base() + *v;
      }
      return out;
    }

   private:
    Base const* _base;
    TupleCodec  _codec;
  };

  template <Algebra Base>
  PowerAlgebra<Base> power(Base const&   base,
                           std::size_t   exponent,
                           std::uint64_t max_size = ~std::uint64_t{0}) {
    return PowerAlgebra<Base>(base, exponent, max_size);
  }

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_POWER_HPP_
