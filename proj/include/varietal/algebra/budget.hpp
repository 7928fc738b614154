#ifndef VARIETAL_ALGEBRA_BUDGET_HPP_
#define VARIETAL_ALGEBRA_BUDGET_HPP_

#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace varietal {

  // Thrown whenever a computation would exceed a configured limit. Results
  // are never silently truncated.
  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct Budget {
    using clock = std::chrono::steady_clock;

    std::size_t max_elements     = std::size_t{1} << 22;
    std::size_t max_pairs        = std::size_t{1} << 24;
    // Upper bound on argument tuples visited by a single enumeration.
    std::size_t max_translations = std::size_t{1} << 30;
    std::optional<clock::time_point> deadline;

    static Budget unlimited() {
      Budget b;
      b.max_elements     = std::numeric_limits<std::size_t>::max();
      b.max_pairs        = std::numeric_limits<std::size_t>::max();
      b.max_translations = std::numeric_limits<std::size_t>::max();
      return b;
    }

    Budget& with_seconds(double seconds) {
      deadline = clock::now()
                 + std::chrono::duration_cast<clock::duration>(
                     std::chrono::duration<double>(seconds));
      return *this;
    }

    // Applies VARIETAL_BUDGET_SECONDS if set and no earlier deadline exists.
    Budget& with_environment() {
      if (char const* env = std::getenv("VARIETAL_BUDGET_SECONDS")) {
        char*  end = nullptr;
        double s   = std::strtod(env, &end);
        if (end != env && s > 0) {
          auto d = clock::now()
                   + std::chrono::duration_cast<clock::duration>(
                       std::chrono::duration<double>(s));
          if (!deadline || d < *deadline) {
            deadline = d;
          }
        }
      }
      return *this;
    }

    void check_time() const {
      if (deadline && clock::now() > *deadline) {
        throw BudgetExceeded("wall-clock budget exhausted");
      }
    }

    void check_elements(std::size_t n) const {
      if (n > max_elements) {
        throw BudgetExceeded("element budget exceeded (" + std::to_string(n)
                             + " > " + std::to_string(max_elements) + ")");
      }
    }

    void check_pairs(std::size_t n) const {
      if (n > max_pairs) {
        throw BudgetExceeded("pair budget exceeded (" + std::to_string(n)
                             + " > " + std::to_string(max_pairs) + ")");
      }
    }

    void check_translations(std::size_t n) const {
      if (n > max_translations) {
        throw BudgetExceeded("enumeration budget exceeded ("
                             + std::to_string(n) + " > "
                             + std::to_string(max_translations) + ")");
      }
    }
  };

}  // namespace varietal

#endif  // VARIETAL_ALGEBRA_BUDGET_HPP_
