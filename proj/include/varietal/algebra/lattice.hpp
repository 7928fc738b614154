#ifndef VARIETAL_ALGEBRA_LATTICE_HPP_
#define VARIETAL_ALGEBRA_LATTICE_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "congruence.hpp"
#include "finite_algebra.hpp"

namespace varietal {

  // A finite lattice given by its operation tables on {0..size-1}.
  struct FiniteLattice {
    std::size_t                           size = 0;
    std::vector<std::vector<std::size_t>> join;
    std::vector<std::vector<std::size_t>> meet;

    bool leq(std::size_t x, std::size_t y) const {
      return meet[x][y] == x;
    }

    // The five-element modular, non-distributive lattice: 0 = bottom,
    // 1..3 atoms, 4 = top.
    static FiniteLattice m3() {
      FiniteLattice l;
      l.size = 5;
      l.join.assign(5, std::vector<std::size_t>(5));
      l.meet.assign(5, std::vector<std::size_t>(5));
      for (std::size_t x = 0; x < 5; ++x) {
        for (std::size_t y = 0; y < 5; ++y) {
          if (x == y) {
            l.join[x][y] = l.meet[x][y] = x;
          } else if (x == 0 || y == 0) {
            l.join[x][y] = x + y;
            l.meet[x][y] = 0;
          } else if (x == 4 || y == 4) {
            l.join[x][y] = 4;
            l.meet[x][y] = x == 4 ? y : x;
          } else {
            l.join[x][y] = 4;
            l.meet[x][y] = 0;
          }
        }
      }
      return l;
    }

    // The chain 0 < 1 < ... < n-1.
    static FiniteLattice chain(std::size_t n) {
      FiniteLattice l;
      l.size = n;
      l.join.assign(n, std::vector<std::size_t>(n));
      l.meet.assign(n, std::vector<std::size_t>(n));
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          l.join[x][y] = std::max(x, y);
          l.meet[x][y] = std::min(x, y);
        }
      }
      return l;
    }
  };

  struct CongruenceLattice {
    // Sorted by number of blocks descending, then labels; element 0 is the
    // identity relation and the last element the total relation.
    std::vector<Congruence> congruences;
    FiniteLattice           lattice;

    std::size_t index_of(Congruence const& c) const {
      for (std::size_t i = 0; i < congruences.size(); ++i) {
        if (congruences[i] == c) {
          return i;
        }
      }
      throw std::out_of_range("congruence not in the lattice");
    }
  };

  // All congruences, as the join-closure of the identity and the principal
  // congruences.  Joins are computed with congruence_from_pairs on the
  // union of the two relations; meets are intersections.
  template <Algebra A>
  CongruenceLattice congruence_lattice(A const&      alg,
                                       std::size_t   size_cap,
                                       Budget const& budget = Budget{}) {
    std::size_t const n = alg.size();

    auto join_of = [&](Congruence const& x, Congruence const& y) {
      std::vector<std::pair<Element, Element>> gens;
      for (auto const* c : {&x, &y}) {
        for (auto const& block : c->blocks()) {
          for (std::size_t i = 1; i < block.size(); ++i) {
            gens.emplace_back(block[0], block[i]);
          }
        }
      }
      return congruence_from_pairs(
          alg, std::span<std::pair<Element, Element> const>(gens), budget);
    };

    std::map<std::vector<std::size_t>, std::size_t> seen;
    std::vector<Congruence>                         all;
    auto add = [&](Congruence c) {
      if (seen.emplace(c.labels(), all.size()).second) {
        all.push_back(std::move(c));
        if (all.size() > size_cap) {
          throw BudgetExceeded("congruence lattice larger than "
                               + std::to_string(size_cap));
        }
      }
    };

    add(Congruence::identity(n));
    for (Element x = 0; x < n; ++x) {
      for (Element y = x + 1; y < n; ++y) {
        budget.check_time();
        add(principal_congruence(alg, x, y, budget));
      }
    }
    // Join closure; joins with principal congruences suffice since every
    // congruence is a join of principal ones.
    std::size_t const principals = all.size();
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 1; j < principals; ++j) {
        budget.check_time();
        Congruence const ci = all[i];
        if (all[j].refines(ci)) {
          continue;
        }
        add(join_of(ci, all[j]));
      }
    }

    std::sort(all.begin(), all.end(), [](auto const& a, auto const& b) {
      if (a.num_blocks() != b.num_blocks()) {
        return a.num_blocks() > b.num_blocks();
      }
      return a < b;
    });
    seen.clear();
    for (std::size_t i = 0; i < all.size(); ++i) {
      seen.emplace(all[i].labels(), i);
    }

    CongruenceLattice out;
    out.lattice.size = all.size();
    out.lattice.join.assign(all.size(), std::vector<std::size_t>(all.size()));
    out.lattice.meet.assign(all.size(), std::vector<std::size_t>(all.size()));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        std::size_t jn, mt;
        if (all[i].refines(all[j])) {
          jn = j;
          mt = i;
        } else if (all[j].refines(all[i])) {
          jn = i;
          mt = j;
        } else {
          budget.check_time();
          auto ij = seen.find(join_of(all[i], all[j]).labels());
          auto im = seen.find(all[i].meet(all[j]).labels());
          if (ij == seen.end() || im == seen.end()) {
            throw std::logic_error("congruence lattice not closed");
          }
          jn = ij->second;
          mt = im->second;
        }
        out.lattice.join[i][j] = out.lattice.join[j][i] = jn;
        out.lattice.meet[i][j] = out.lattice.meet[j][i] = mt;
      }
    }
    out.congruences = std::move(all);
    return out;
  }

  struct SemidistributivityResult {
    bool holds = true;
    // (x, y, z) with x∧y = x∧z but x∧y != x∧(y∨z).
    std::optional<std::array<std::size_t, 3>> counterexample;
  };

  inline SemidistributivityResult is_meet_semidistributive(
      FiniteLattice const& l) {
    SemidistributivityResult r;
    for (std::size_t x = 0; x < l.size; ++x) {
      for (std::size_t y = 0; y < l.size; ++y) {
        for (std::size_t z = 0; z < l.size; ++z) {
          std::size_t xy = l.meet[x][y];
          if (xy == l.meet[x][z] && xy != l.meet[x][l.join[y][z]]) {
            r.holds          = false;
            r.counterexample = std::array<std::size_t, 3>{x, y, z};
            return r;
          }
        }
      }
    }
    return r;
  }

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_LATTICE_HPP_
