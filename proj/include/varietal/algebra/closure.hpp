// Enumeration of operation images and subuniverse generation.
//
// enumerate_images walks the argument tuples of one operation level by
// level.  After each argument the prefix states of all live prefixes are
// deduplicated, so prefixes that have the same effect on the result are
// explored once.  With the zero-absorbing arity-5 operations of the
// algebras this library targets, almost every prefix settles after one or
// two arguments.

#ifndef VARIETAL_ALGEBRA_CLOSURE_HPP_
#define VARIETAL_ALGEBRA_CLOSURE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "finite_algebra.hpp"

namespace varietal {

  namespace detail {

    inline std::uint64_t hash_words(std::span<PrefixWord const> w) noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ull ^ w.size();
      for (auto x : w) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
      }
      return h ^ (h >> 33);
    }

    // Rows of `width` words stored contiguously, with set semantics.
    class FlatStateSet {
     public:
      explicit FlatStateSet(std::size_t width) : _width(width) {
        _slots.assign(64, empty);
      }

      std::size_t size() const noexcept {
        return _count;
      }

      std::span<PrefixWord const> row(std::size_t i) const {
        return {_rows.data() + i * _width, _width};
      }

      // Returns true if `w` was not present.
      bool insert(std::span<PrefixWord const> w) {
        if ((_count + 1) * 2 > _slots.size()) {
          grow();
        }
        std::size_t mask = _slots.size() - 1;
        std::size_t i    = hash_words(w) & mask;
        while (_slots[i] != empty) {
          auto r = row(_slots[i]);
          if (std::equal(r.begin(), r.end(), w.begin())) {
            return false;
          }
          i = (i + 1) & mask;
        }
        _slots[i] = static_cast<std::uint32_t>(_count);
        _rows.insert(_rows.end(), w.begin(), w.end());
        ++_count;
        return true;
      }

      void clear() {
        _rows.clear();
        _count = 0;
        std::fill(_slots.begin(), _slots.end(), empty);
      }

     private:
      static constexpr std::uint32_t empty = ~std::uint32_t{0};

      void grow() {
        _slots.assign(_slots.size() * 2, empty);
        std::size_t mask = _slots.size() - 1;
        for (std::size_t r = 0; r < _count; ++r) {
          std::size_t i = hash_words(row(r)) & mask;
          while (_slots[i] != empty) {
            i = (i + 1) & mask;
          }
          _slots[i] = static_cast<std::uint32_t>(r);
        }
      }

      std::size_t                _width;
      std::size_t                _count = 0;
      std::vector<PrefixWord>    _rows;
      std::vector<std::uint32_t> _slots;
    };

    struct ValueRowHash {
      std::size_t operator()(std::vector<Element> const& v) const noexcept {
        return hash_words(v);
      }
    };

  }  // namespace detail

  // Enumerates the distinct results of `op` over argument tuples drawn from
  // `domain`.  If `position` is set, that argument is not drawn from the
  // domain; instead the enumeration runs one "track" per entry of
  // `track_values`, each track putting its value at `position`, and the
  // tracks share every other argument.  Without a position there is one
  // track.
  //
  // visit(values, args) is called once per distinct tuple of track results
  // with one representative argument tuple (track 0's value at `position`).
  // Output order is deterministic.  `work` accumulates visited prefixes.
  template <Algebra A, typename Visit>
  void enumerate_images(A const&                   alg,
                        std::size_t                op,
                        std::span<Element const>   domain,
                        std::optional<std::size_t> position,
                        std::span<Element const>   track_values,
                        Visit&&                    visit,
                        Budget const&              budget,
                        std::size_t&               work) {
    std::size_t const arity  = alg.signature(op).arity;
    std::size_t const tracks = position ? track_values.size() : 1;
    if (position && *position >= arity) {
      throw std::out_of_range("translation position out of range");
    }
    if (domain.empty() && arity > (position ? 1u : 0u)) {
      return;
    }

    if (!alg.prefix_capable(op)) {
      // Plain lexicographic enumeration for lazily evaluated operations.
      std::unordered_set<std::vector<Element>, detail::ValueRowHash> seen;
      std::vector<std::size_t> digit(arity, 0);
      std::vector<Element>     args(arity), track_args(arity);
      std::vector<Element>     values(tracks);
      std::size_t              free = arity - (position ? 1 : 0);
      while (true) {
        for (std::size_t k = 0; k < arity; ++k) {
          args[k] = (position && k == *position) ? track_values[0]
                                                 : domain[digit[k]];
        }
        for (std::size_t t = 0; t < tracks; ++t) {
          track_args = args;
          if (position) {
            track_args[*position] = track_values[t];
          }
          values[t] = alg.apply(op, track_args);
        }
        if ((++work & 0xfff) == 0) {
          budget.check_translations(work);
          budget.check_time();
        }
        if (seen.insert(values).second) {
          visit(std::span<Element const>(values),
                std::span<Element const>(args));
        }
        if (free == 0) {
          break;
        }
        bool advanced = false;
        for (std::size_t k = arity; k-- > 0;) {
          if (position && k == *position) {
            continue;
          }
          if (++digit[k] < domain.size()) {
            advanced = true;
            break;
          }
          digit[k] = 0;
        }
        if (!advanced) {
          break;
        }
      }
      return;
    }

    std::size_t const width = alg.prefix_width();
    std::size_t const row   = width * tracks;

    // Level j: distinct states after j arguments, plus one representative
    // argument prefix of length j per state.
    detail::FlatStateSet cur(row), next(row);
    std::vector<Element> cur_args, next_args;
    std::vector<PrefixWord> scratch(row);

    for (std::size_t t = 0; t < tracks; ++t) {
      alg.prefix_start(op, std::span<PrefixWord>(scratch).subspan(t * width, width));
    }
    cur.insert(scratch);

    auto all_settled = [&](std::span<PrefixWord const> s) {
      return std::all_of(s.begin(), s.end(),
                         [](PrefixWord w) { return (w & settled_bit) != 0; });
    };

    for (std::size_t depth = 0; depth < arity; ++depth) {
      next.clear();
      next_args.clear();
      for (std::size_t i = 0; i < cur.size(); ++i) {
        auto parent      = cur.row(i);
        auto parent_args = std::span<Element const>(cur_args).subspan(
            i * depth, depth);
        auto push_child = [&](Element arg, bool per_track) {
          std::copy(parent.begin(), parent.end(), scratch.begin());
          for (std::size_t t = 0; t < tracks; ++t) {
            Element x = per_track ? track_values[t] : arg;
            alg.prefix_advance(
                op, std::span<PrefixWord>(scratch).subspan(t * width, width),
                depth, x);
          }
          if (next.insert(scratch)) {
            next_args.insert(next_args.end(), parent_args.begin(),
                             parent_args.end());
            next_args.push_back(per_track ? track_values[0] : arg);
          }
        };
        if (position && depth == *position) {
          push_child(0, true);
          ++work;
        } else if (all_settled(parent)) {
          push_child(domain.front(), false);
          ++work;
        } else {
          for (Element x : domain) {
            push_child(x, false);
          }
          work += domain.size();
        }
      }
      budget.check_translations(work);
      std::swap(cur, next);
      std::swap(cur_args, next_args);
    }

    std::vector<Element> values(tracks);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto s = cur.row(i);
      for (std::size_t t = 0; t < tracks; ++t) {
        auto v = alg.prefix_value(op, s.subspan(t * width, width));
        if (!v) {
          throw std::logic_error("prefix state not settled after all arguments");
        }
        values[t] = *v;
      }
      visit(std::span<Element const>(values),
            std::span<Element const>(cur_args).subspan(i * arity, arity));
    }
  }

  namespace detail {
    // Membership for element sets of possibly huge algebras.
    class MembershipSet {
     public:
      explicit MembershipSet(std::uint64_t universe) {
        if (universe <= (std::uint64_t{1} << 26)) {
          _bits.assign(universe, false);
          _dense = true;
        }
      }
      bool insert(Element x) {
        if (_dense) {
          if (_bits[x]) {
            return false;
          }
          _bits[x] = true;
          return true;
        }
        return _hash.insert(x).second;
      }
      bool contains(Element x) const {
        return _dense ? static_cast<bool>(_bits[x]) : _hash.count(x) != 0;
      }

     private:
      bool                        _dense = false;
      std::vector<bool>           _bits;
      std::unordered_set<Element> _hash;
    };
  }  // namespace detail

  // Least subset containing `gens` and closed under every operation
  // (including nullary ones), sorted ascending.
  template <Algebra A>
  std::vector<Element> generate_subuniverse(A const&                 alg,
                                            std::span<Element const> gens,
                                            Budget const& budget = Budget{}) {
    for (auto g : gens) {
      if (g >= alg.size()) {
        throw std::out_of_range("generator outside the universe");
      }
    }
    detail::MembershipSet member(alg.size());
    std::vector<Element>  elements;
    for (auto g : gens) {
      if (member.insert(g)) {
        elements.push_back(g);
      }
    }
    std::size_t work = 0;
    // Nullary operations only need to fire once, and they make the
    // closure of the empty set well-defined.
    for (std::size_t op = 0; op < alg.num_ops(); ++op) {
      if (alg.signature(op).arity == 0) {
        Element v = alg.apply(op, {});
        if (member.insert(v)) {
          elements.push_back(v);
        }
      }
    }
    // Rounds over the whole current set until one adds nothing; the prefix
    // merging keeps the repeated passes cheap.
    std::size_t done = 0;
    while (done < elements.size()) {
      budget.check_elements(elements.size());
      budget.check_time();
      std::vector<Element> domain(elements);
      std::size_t          before = elements.size();
      for (std::size_t op = 0; op < alg.num_ops(); ++op) {
        if (alg.signature(op).arity == 0) {
          continue;
        }
        enumerate_images(
            alg, op, domain, std::nullopt, {},
            [&](std::span<Element const> v, std::span<Element const>) {
              if (member.insert(v[0])) {
                elements.push_back(v[0]);
              }
            },
            budget, work);
      }
      done = before;
    }
    budget.check_elements(elements.size());
    std::sort(elements.begin(), elements.end());
    return elements;
  }

  template <Algebra A>
  std::vector<Element> generate_subuniverse(A const& alg,
                                            std::initializer_list<Element> gens,
                                            Budget const& budget = Budget{}) {
    std::vector<Element> g(gens);
    return generate_subuniverse(alg, std::span<Element const>(g), budget);
  }

  template <Algebra A>
  std::vector<Element> all_elements(A const& alg) {
    std::vector<Element> out(alg.size());
    std::iota(out.begin(), out.end(), Element{0});
    return out;
  }

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_CLOSURE_HPP_
