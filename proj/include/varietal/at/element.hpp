// Elements of the algebra A(T) attached to a Turing machine T with states
// mu_0..mu_n:
//
//   A = {0} ∪ U ∪ W,   U = {1, 2, H},   W = {C, D, ∂C, ∂D},
//   V_i = {C_{ir}^s, D_{ir}^s, M_i^r and their bars | r, s ∈ {0, 1}},
//
// and A(T) = A ∪ V_0 ∪ ... ∪ V_n, so |A(T)| = 8 + 20 (n + 1).
//
// Canonical text names: 0 1 2 H C bC D bD, C[i,r]^s, D[i,r]^s, M[i]^r,
// with a `b` prefix for barred elements.

#ifndef VARIETAL_AT_ELEMENT_HPP_
#define VARIETAL_AT_ELEMENT_HPP_

#include <cstddef>
#include <compare>
#include <cstdint>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "varietal/algebra/finite_algebra.hpp"

namespace varietal::at {

  enum class Unit : std::uint8_t { one, two, halt };
  enum class Letter : std::uint8_t { C, D };
  enum class Kind : std::uint8_t { C, D, M };

  struct Zero {
    friend auto operator<=>(Zero, Zero) = default;
  };

  struct UElem {
    Unit u;
    friend auto operator<=>(UElem, UElem) = default;
  };

  struct WElem {
    Letter letter;
    bool   barred = false;
    friend auto operator<=>(WElem, WElem) = default;
  };

  struct VElem {
    Kind        kind;
    std::size_t state  = 0;
    int         r      = 0;
    int         s      = -1;  // -1 for M, which carries no s
    bool        barred = false;
    friend auto operator<=>(VElem const&, VElem const&) = default;
  };

  using ATElement = std::variant<Zero, UElem, WElem, VElem>;

  // Constructors named after the usual notation.
  inline ATElement zero() {
    return Zero{};
  }
  inline ATElement one() {
    return UElem{Unit::one};
  }
  inline ATElement two() {
    return UElem{Unit::two};
  }
  inline ATElement halt() {
    return UElem{Unit::halt};
  }
  inline ATElement C() {
    return WElem{Letter::C, false};
  }
  inline ATElement D() {
    return WElem{Letter::D, false};
  }
  inline ATElement vC(std::size_t i, int r, int s, bool barred = false) {
    return VElem{Kind::C, i, r, s, barred};
  }
  inline ATElement vD(std::size_t i, int r, int s, bool barred = false) {
    return VElem{Kind::D, i, r, s, barred};
  }
  inline ATElement vM(std::size_t i, int r, bool barred = false) {
    return VElem{Kind::M, i, r, -1, barred};
  }

  inline bool is_zero(ATElement const& x) {
    return std::holds_alternative<Zero>(x);
  }
  inline bool in_U(ATElement const& x) {
    return std::holds_alternative<UElem>(x);
  }
  inline bool in_W(ATElement const& x) {
    return std::holds_alternative<WElem>(x);
  }
  inline bool in_V(ATElement const& x) {
    return std::holds_alternative<VElem>(x);
  }
  // Domain of the bar permutation.
  inline bool barrable(ATElement const& x) {
    return in_V(x) || in_W(x);
  }
  inline bool is_unit(ATElement const& x, Unit u) {
    auto const* p = std::get_if<UElem>(&x);
    return p != nullptr && p->u == u;
  }

  // The order-2 permutation ∂ on V ∪ W; not an operation of the algebra.
  inline ATElement bar(ATElement const& x) {
    if (auto const* w = std::get_if<WElem>(&x)) {
      return WElem{w->letter, !w->barred};
    }
    if (auto const* v = std::get_if<VElem>(&x)) {
      VElem out  = *v;
      out.barred = !v->barred;
      return out;
    }
    throw std::domain_error("bar is only defined on V ∪ W");
  }

  // Height-1 semilattice order: x <= y iff x ∈ {0, y}.
  inline bool leq(ATElement const& x, ATElement const& y) {
    return is_zero(x) || x == y;
  }

  // x ≺ y iff x = y = 2, or x = 2 and y = H, or x = y = 1.
  inline bool prec(ATElement const& x, ATElement const& y) {
    return (is_unit(x, Unit::two) && is_unit(y, Unit::two))
           || (is_unit(x, Unit::two) && is_unit(y, Unit::halt))
           || (is_unit(x, Unit::one) && is_unit(y, Unit::one));
  }

  inline std::string to_string(ATElement const& x) {
    struct Printer {
      std::string operator()(Zero) const {
        return "0";
      }
      std::string operator()(UElem u) const {
        switch (u.u) {
          case Unit::one:
            return "1";
          case Unit::two:
            return "2";
          default:
            return "H";
        }
      }
      std::string operator()(WElem w) const {
        return std::string(w.barred ? "b" : "")
               + (w.letter == Letter::C ? "C" : "D");
      }
      std::string operator()(VElem const& v) const {
        std::string p = v.barred ? "b" : "";
        if (v.kind == Kind::M) {
          return p + "M[" + std::to_string(v.state) + "]^" + std::to_string(v.r);
        }
        return p + (v.kind == Kind::C ? "C[" : "D[") + std::to_string(v.state)
               + "," + std::to_string(v.r) + "]^" + std::to_string(v.s);
      }
    };
    return std::visit(Printer{}, x);
  }

  // Bijection between A(T) and {0, ..., 8 + 20 (n + 1) - 1} in the order
  // 0, 1, 2, H, C, ∂C, D, ∂D, then V sorted by (state, kind, r, s, bar).
  class ElementCodec {
   public:
    explicit ElementCodec(std::size_t number_of_states)
        : _states(number_of_states) {}

    std::size_t number_of_states() const noexcept {
      return _states;
    }

    std::size_t size() const noexcept {
      return 8 + 20 * _states;
    }

    Element encode(ATElement const& x) const {
      struct Enc {
        std::size_t states;
        Element     operator()(Zero) const {
          return 0;
        }
        Element operator()(UElem u) const {
          return 1 + static_cast<Element>(u.u);
        }
        Element operator()(WElem w) const {
          return 4 + 2 * static_cast<Element>(w.letter) + (w.barred ? 1 : 0);
        }
        Element operator()(VElem const& v) const {
          if (v.state >= states || v.r < 0 || v.r > 1) {
            throw std::out_of_range("V element outside this algebra");
          }
          Element base = 8 + 20 * static_cast<Element>(v.state);
          Element b    = v.barred ? 1 : 0;
          if (v.kind == Kind::M) {
            return base + 16 + 2 * static_cast<Element>(v.r) + b;
          }
          if (v.s < 0 || v.s > 1) {
            throw std::out_of_range("C/D element needs s in {0, 1}");
          }
          Element k = v.kind == Kind::C ? 0 : 8;
          return base + k + (2 * static_cast<Element>(v.r) + v.s) * 2 + b;
        }
      };
      return std::visit(Enc{_states}, x);
    }

    ATElement decode(Element i) const {
      if (i >= size()) {
        throw std::out_of_range("index outside A(T)");
      }
      if (i == 0) {
        return Zero{};
      }
      if (i < 4) {
        return UElem{static_cast<Unit>(i - 1)};
      }
      if (i < 8) {
        return WElem{static_cast<Letter>((i - 4) / 2), (i - 4) % 2 == 1};
      }
      Element     off    = (i - 8) % 20;
      std::size_t state  = (i - 8) / 20;
      bool        barred = off % 2 == 1;
      if (off >= 16) {
        return VElem{Kind::M, state, static_cast<int>((off - 16) / 2), -1,
                     barred};
      }
      Kind k  = off < 8 ? Kind::C : Kind::D;
      off     = off % 8;
      int  rs = static_cast<int>(off / 2);
      return VElem{k, state, rs / 2, rs % 2, barred};
    }

    std::string name(Element i) const {
      return to_string(decode(i));
    }

    ATElement parse(std::string_view text) const {
      std::string s(text);
      if (s == "0") {
        return Zero{};
      }
      if (s == "1") {
        return one();
      }
      if (s == "2") {
        return two();
      }
      if (s == "H") {
        return halt();
      }
      bool barred = !s.empty() && s[0] == 'b';
      std::string body = barred ? s.substr(1) : s;
      if (body == "C" || body == "D") {
        return WElem{body == "C" ? Letter::C : Letter::D, barred};
      }
      static std::regex const cd(R"(([CD])\[(\d+),([01])\]\^([01]))");
      static std::regex const m(R"(M\[(\d+)\]\^([01]))");
      std::smatch match;
      ATElement   out;
      if (std::regex_match(body, match, cd)) {
        out = VElem{match[1] == "C" ? Kind::C : Kind::D,
                    std::stoul(match[2]), std::stoi(match[3]),
                    std::stoi(match[4]), barred};
      } else if (std::regex_match(body, match, m)) {
        out = VElem{Kind::M, std::stoul(match[1]), std::stoi(match[2]), -1,
                    barred};
      } else {
        throw std::invalid_argument("not an element name: '" + s + "'");
      }
      if (std::get<VElem>(out).state >= _states) {
        throw std::invalid_argument("state index out of range in '" + s + "'");
      }
      return out;
    }

   private:
    std::size_t _states;
  };

}  // namespace varietal::at

#endif  // VARIETAL_AT_ELEMENT_HPP_
