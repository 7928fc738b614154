// Shared test helpers: slow reference implementations to compare the
// engine against, a second evaluator for A(T) written from element names,
// and seeded generators.

#ifndef VARIETAL_TESTS_SUPPORT_HPP_
#define VARIETAL_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "varietal/algebra/congruence.hpp"
#include "varietal/algebra/finite_algebra.hpp"
#include "varietal/algebra/power.hpp"
#include "varietal/at/algebra.hpp"
#include "varietal/bn/context.hpp"
#include "varietal/tm/turing_machine.hpp"

namespace testing {

  using varietal::Element;

  inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
  }

  inline std::string fixture(std::string const& name) {
    return std::string(VARIETAL_FIXTURES) + "/" + name;
  }

  inline varietal::tm::TuringMachine halting_machine() {
    return varietal::tm::parse_tm("states: halt start\nstart 0 -> 0 L halt\n");
  }

  // Machines with 2, 3 and 4 states.
  inline varietal::tm::TuringMachine machine_with_states(std::size_t k) {
    std::string text = "states: halt start";
    for (std::size_t i = 2; i < k; ++i) {
      text += " q" + std::to_string(i);
    }
    text += "\n";
    std::string prev = "start";
    for (std::size_t i = 2; i < k; ++i) {
      std::string q = "q" + std::to_string(i);
      text += prev + " 0 -> 1 R " + q + "\n";
      prev = q;
    }
    text += prev + " 0 -> 0 L halt\n";
    return varietal::tm::parse_tm(text);
  }

  ////////////////////////////////////////////////////////////////////////
  // Naive principal congruence
  ////////////////////////////////////////////////////////////////////////

  // Closes {(a, b)} ∪ Δ under symmetry, transitivity and f(.., x, ..) ~
  // f(.., y, ..) for related x, y, with a relation matrix.  Each related
  // pair is pushed through every operation position once, with all
  // constant tuples listed by a plain counter.
  template <typename A>
  std::vector<std::vector<bool>> naive_congruence(A const& alg, Element a,
                                                  Element b) {
    std::size_t const n = alg.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      rel[i][i] = true;
    }
    std::vector<std::pair<Element, Element>> todo;
    auto add = [&](Element x, Element y) {
      if (!rel[x][y]) {
        rel[x][y] = rel[y][x] = true;
        todo.emplace_back(x, y);
      }
    };
    add(a, b);
    while (!todo.empty()) {
      // Transitive closure over the current relation.
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t i = 0; i < n; ++i) {
            if (!rel[i][k]) {
              continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
              if (rel[k][j] && !rel[i][j]) {
                add(i, j);
                grew = true;
              }
            }
          }
        }
      }
      auto batch = std::move(todo);
      todo.clear();
      for (auto [x, y] : batch) {
        for (std::size_t op = 0; op < alg.num_ops(); ++op) {
          std::size_t arity = alg.signature(op).arity;
          std::vector<Element> args(arity, 0);
          for (std::size_t p = 0; p < arity; ++p) {
            std::vector<std::size_t> digit(arity, 0);
            while (true) {
              for (std::size_t k = 0; k < arity; ++k) {
                args[k] = k == p ? 0 : digit[k];
              }
              args[p]    = x;
              Element fx = alg.apply(op, args);
              args[p]    = y;
              Element fy = alg.apply(op, args);
              add(fx, fy);
              std::size_t k = arity;
              while (k-- > 0) {
                if (k == p) {
                  continue;
                }
                if (++digit[k] < n) {
                  break;
                }
                digit[k] = 0;
              }
              if (k == static_cast<std::size_t>(-1)) {
                break;
              }
            }
          }
        }
      }
    }
    return rel;
  }

  inline bool same_relation(varietal::Congruence const&                     c,
                     std::vector<std::vector<bool>> const& rel) {
    for (std::size_t x = 0; x < rel.size(); ++x) {
      for (std::size_t y = 0; y < rel.size(); ++y) {
        if (c.related(x, y) != rel[x][y]) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Naive subuniverse of A(T)^n
  ////////////////////////////////////////////////////////////////////////

  // Rounds of "apply every operation to every tuple of the current set"
  // inside the full power of A(T), without the coordinate subalgebra.
  inline std::set<varietal::bn::Tuple> naive_bn(
      varietal::at::ATAlgebra const& at, std::size_t n,
      std::vector<varietal::bn::Tuple> const& gens) {
    varietal::PowerAlgebra<varietal::FiniteAlgebra> pw(at.carrier(), n);
    auto encode = [&](varietal::bn::Tuple const& t) {
      std::vector<Element> d;
      for (auto const& x : t) {
        d.push_back(at.codec().encode(x));
      }
      return pw.codec().encode(d);
    };
    std::set<Element> have;
    for (auto const& g : gens) {
      have.insert(encode(g));
    }
    while (true) {
      std::vector<Element> cur(have.begin(), have.end());
      std::set<Element>    next = have;
      for (std::size_t op = 0; op < pw.num_ops(); ++op) {
        std::size_t arity = pw.signature(op).arity;
        std::vector<std::size_t> digit(arity, 0);
        std::vector<Element>     args(arity);
        while (true) {
          for (std::size_t k = 0; k < arity; ++k) {
            args[k] = cur[digit[k]];
          }
          next.insert(pw.apply(op, args));
          std::size_t k = arity;
          while (k-- > 0) {
            if (++digit[k] < cur.size()) {
              break;
            }
            digit[k] = 0;
          }
          if (k == static_cast<std::size_t>(-1)) {
            break;
          }
        }
      }
      if (next.size() == have.size()) {
        break;
      }
      have = std::move(next);
    }
    std::set<varietal::bn::Tuple> out;
    for (auto i : have) {
      varietal::bn::Tuple t;
      for (auto d : pw.codec().decode(i)) {
        t.push_back(at.codec().decode(d));
      }
      out.insert(t);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // A second evaluator, on element names
  ////////////////////////////////////////////////////////////////////////

  namespace names {
    // Names of V ∪ W start with C, D, M or the bar marker b.
    inline bool barrable(std::string const& x) {
      return !x.empty()
             && (x[0] == 'b' || x[0] == 'C' || x[0] == 'D' || x[0] == 'M');
    }
    inline std::string bar(std::string const& x) {
      return x[0] == 'b' ? x.substr(1) : "b" + x;
    }
    inline bool is_bar_of(std::string const& x, std::string const& y) {
      return barrable(y) && x == bar(y);
    }
    inline std::string meet(std::string const& x, std::string const& y) {
      return x == y ? x : "0";
    }
    inline std::string mul(std::string const& x, std::string const& y) {
      static std::vector<std::pair<std::pair<std::string, std::string>,
                                   std::string>> const table{
          {{"2", "D"}, "D"},   {{"H", "C"}, "D"},   {{"1", "C"}, "C"},
          {{"2", "bD"}, "bD"}, {{"H", "bC"}, "bD"}, {{"1", "bC"}, "bC"}};
      for (auto const& [k, v] : table) {
        if (k.first == x && k.second == y) {
          return v;
        }
      }
      return "0";
    }
    inline std::string J(std::string const& x, std::string const& y,
                         std::string const& z) {
      if (x == y) {
        return x;
      }
      if (is_bar_of(x, y)) {
        return meet(x, z);
      }
      return "0";
    }
    inline std::string J_prime(std::string const& x, std::string const& y,
                               std::string const& z) {
      if (x == y) {
        return meet(x, z);
      }
      if (is_bar_of(x, y)) {
        return x;
      }
      return "0";
    }
    inline std::string K(std::string const& x, std::string const& y,
                         std::string const& z) {
      if (is_bar_of(x, y)) {
        return y;
      }
      if (x == y && is_bar_of(y, z)) {
        return z;
      }
      return meet(meet(x, y), z);
    }
  }  // namespace names

  ////////////////////////////////////////////////////////////////////////
  // Random finite algebras
  ////////////////////////////////////////////////////////////////////////

  // Unary and binary operations (ternary on small universes).  With
  // `planted`, the operations respect a random partition, so nontrivial
  // congruences exist.
  inline varietal::FiniteAlgebra random_algebra(std::mt19937_64& rng,
                                                std::size_t      size,
                                                bool             planted) {
    std::size_t blocks = planted ? 1 + draw(rng, std::max<std::size_t>(size / 2, 1))
                                 : size;
    std::vector<std::size_t>              block_of(size);
    std::vector<std::vector<Element>>     members(blocks);
    for (std::size_t x = 0; x < size; ++x) {
      block_of[x] = x < blocks ? x : draw(rng, blocks);
      members[block_of[x]].push_back(x);
    }
    std::size_t ops = 1 + draw(rng, 3);
    std::vector<varietal::Operation> list;
    for (std::size_t k = 0; k < ops; ++k) {
      std::size_t arity = 1 + draw(rng, size <= 12 ? 3 : 2);
      auto        total = *varietal::checked_pow(size, arity);
      std::vector<Element> table(total);
      std::map<std::vector<std::size_t>, std::size_t> image;
      for (std::uint64_t i = 0; i < total; ++i) {
        if (!planted) {
          table[i] = draw(rng, size);
          continue;
        }
        std::vector<std::size_t> key;
        std::uint64_t            rest = i;
        for (std::size_t a = 0; a < arity; ++a) {
          key.push_back(block_of[rest % size]);
          rest /= size;
        }
        auto it = image.find(key);
        if (it == image.end()) {
          it = image.emplace(key, draw(rng, blocks)).first;
        }
        auto const& m = members[it->second];
        table[i]      = m[draw(rng, m.size())];
      }
      list.push_back(varietal::Operation::from_table(
          "f" + std::to_string(k), arity, size, std::move(table)));
    }
    return varietal::FiniteAlgebra(size, std::move(list));
  }

  ////////////////////////////////////////////////////////////////////////
  // Monotonicity of the A(T) operations
  ////////////////////////////////////////////////////////////////////////

  struct MonotoneStats {
    std::size_t checked    = 0;  // pairs u <= v compared
    std::size_t nonzero    = 0;  // of those, with f(v) != 0
    std::size_t violations = 0;
    std::string first;
  };

  inline void record(MonotoneStats& st, varietal::at::ATAlgebra const& at,
                     std::size_t op, std::vector<Element> const& u,
                     std::vector<Element> const& v) {
    Element fu = at.carrier().apply(op, u);
    Element fv = at.carrier().apply(op, v);
    ++st.checked;
    st.nonzero += fv != 0;
    if (fu != 0 && fu != fv) {
      if (st.violations++ == 0) {
        st.first = at.ops()[op].symbol + ": f(u) = " + at.codec().name(fu)
                   + ", f(v) = " + at.codec().name(fv);
      }
    }
  }

  // Every v and every u obtained by zeroing a subset of its coordinates;
  // these are exactly the pairs u <= v.
  inline MonotoneStats monotone_exhaustive(varietal::at::ATAlgebra const& at,
                                           std::size_t                    op) {
    MonotoneStats st;
    std::size_t   arity = at.ops()[op].arity;
    std::size_t   size  = at.size();
    std::vector<Element> v(arity, 0), u(arity);
    while (true) {
      for (std::size_t mask = 1; mask < (std::size_t{1} << arity); ++mask) {
        bool moved = false;
        for (std::size_t k = 0; k < arity; ++k) {
          u[k]  = (mask >> k) & 1 ? 0 : v[k];
          moved = moved || u[k] != v[k];
        }
        if (moved) {
          record(st, at, op, u, v);
        }
      }
      std::size_t k = arity;
      while (k-- > 0 && ++v[k] == size) {
        v[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) {
        break;
      }
    }
    return st;
  }

  // Random v, biased towards repeated and barred coordinates so that the
  // case conditions fire, and u = v with a random nonempty set of
  // coordinates zeroed.
  inline MonotoneStats monotone_sampled(varietal::at::ATAlgebra const& at,
                                        std::vector<std::size_t> const& ops,
                                        std::size_t samples, std::uint64_t seed) {
    MonotoneStats   st;
    std::mt19937_64 rng(seed);
    auto const&     codec = at.codec();
    std::vector<Element> small{0, 1, 2, 3, 4, 5, 6, 7};
    for (std::size_t k = 0; k < samples; ++k) {
      std::size_t op    = ops[draw(rng, ops.size())];
      std::size_t arity = at.ops()[op].arity;
      std::vector<Element> v(arity);
      for (std::size_t i = 0; i < arity; ++i) {
        switch (draw(rng, 4)) {
          case 0:
            v[i] = draw(rng, at.size());
            break;
          case 1:
            v[i] = small[draw(rng, small.size())];
            break;
          default:
            if (i == 0) {
              v[i] = draw(rng, at.size());
              break;
            }
            v[i] = v[draw(rng, i)];
            if (draw(rng, 2) && varietal::at::barrable(codec.decode(v[i]))) {
              v[i] = codec.encode(varietal::at::bar(codec.decode(v[i])));
            }
        }
      }
      std::vector<Element> u = v;
      std::size_t mask = 1 + draw(rng, (std::size_t{1} << arity) - 1);
      for (std::size_t i = 0; i < arity; ++i) {
        if ((mask >> i) & 1) {
          u[i] = 0;
        }
      }
      record(st, at, op, u, v);
    }
    return st;
  }

  // Boundary cases: one coordinate ranges over the whole universe, the
  // others over 0, the units and the letters with their bars.
  inline MonotoneStats monotone_structured(varietal::at::ATAlgebra const& at,
                                           std::size_t                    op) {
    MonotoneStats st;
    std::size_t   arity = at.ops()[op].arity;
    std::size_t   pool  = 8;
    std::vector<Element> v(arity), u(arity);
    for (std::size_t wide = 0; wide < arity; ++wide) {
      std::vector<std::size_t> digit(arity, 0);
      while (true) {
        for (std::size_t k = 0; k < arity; ++k) {
          v[k] = digit[k];
        }
        for (std::size_t mask = 1; mask < (std::size_t{1} << arity); ++mask) {
          bool moved = false;
          for (std::size_t k = 0; k < arity; ++k) {
            u[k]  = (mask >> k) & 1 ? 0 : v[k];
            moved = moved || u[k] != v[k];
          }
          if (moved) {
            record(st, at, op, u, v);
          }
        }
        std::size_t k = arity;
        while (k-- > 0 && ++digit[k] == (k == wide ? at.size() : pool)) {
          digit[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) {
          break;
        }
      }
    }
    return st;
  }

}  // namespace testing

#endif  // VARIETAL_TESTS_SUPPORT_HPP_
