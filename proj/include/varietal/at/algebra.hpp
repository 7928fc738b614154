// The algebra A(T) of a Turing machine T, and A'(T) = A(T) plus K.

#ifndef VARIETAL_AT_ALGEBRA_HPP_
#define VARIETAL_AT_ALGEBRA_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "varietal/algebra/finite_algebra.hpp"
#include "varietal/at/element.hpp"
#include "varietal/tm/turing_machine.hpp"

namespace varietal::at {

  ////////////////////////////////////////////////////////////////////////
  // Case definitions of the fundamental operations
  ////////////////////////////////////////////////////////////////////////

  inline ATElement meet(ATElement const& x, ATElement const& y) {
    return x == y ? x : zero();
  }

  // (x ∧ y) ∨ (x ∧ z); both meets lie in {0, x}.
  inline ATElement meet_join(ATElement const& x,
                             ATElement const& y,
                             ATElement const& z) {
    ATElement m = meet(x, y);
    return is_zero(m) ? meet(x, z) : m;
  }

  // 2·D = H·C = D, 1·C = C, 2·∂D = H·∂C = ∂D, 1·∂C = ∂C, 0 otherwise.
  inline ATElement mul(ATElement const& x, ATElement const& y) {
    auto const* u = std::get_if<UElem>(&x);
    auto const* w = std::get_if<WElem>(&y);
    if (u == nullptr || w == nullptr) {
      return zero();
    }
    if (u->u == Unit::two && w->letter == Letter::D) {
      return WElem{Letter::D, w->barred};
    }
    if (u->u == Unit::halt && w->letter == Letter::C) {
      return WElem{Letter::D, w->barred};
    }
    if (u->u == Unit::one && w->letter == Letter::C) {
      return WElem{Letter::C, w->barred};
    }
    return zero();
  }

  inline bool is_bar_of(ATElement const& x, ATElement const& y) {
    return barrable(y) && x == bar(y);
  }

  inline ATElement op_J(ATElement const& x,
                        ATElement const& y,
                        ATElement const& z) {
    if (x == y) {
      return x;
    }
    if (is_bar_of(x, y)) {
      return meet(x, z);
    }
    return zero();
  }

  inline ATElement op_J_prime(ATElement const& x,
                              ATElement const& y,
                              ATElement const& z) {
    if (x == y) {
      return meet(x, z);
    }
    if (is_bar_of(x, y)) {
      return x;
    }
    return zero();
  }

  inline ATElement op_S0(ATElement const& u,
                         ATElement const& x,
                         ATElement const& y,
                         ATElement const& z) {
    auto const* v = std::get_if<VElem>(&u);
    return (v != nullptr && v->state == 0) ? meet_join(x, y, z) : zero();
  }

  inline ATElement op_S1(ATElement const& u,
                         ATElement const& x,
                         ATElement const& y,
                         ATElement const& z) {
    return (is_unit(u, Unit::one) || is_unit(u, Unit::two))
               ? meet_join(x, y, z)
               : zero();
  }

  inline ATElement op_S2(ATElement const& u,
                         ATElement const& v,
                         ATElement const& x,
                         ATElement const& y,
                         ATElement const& z) {
    return is_bar_of(u, v) ? meet_join(x, y, z) : zero();
  }

  inline ATElement op_T(ATElement const& w,
                        ATElement const& x,
                        ATElement const& y,
                        ATElement const& z) {
    ATElement p = mul(w, x);
    ATElement q = mul(y, z);
    if (p != q) {
      return zero();
    }
    if (w == y && x == z) {
      return p;
    }
    return is_zero(p) ? zero() : bar(p);
  }

  // I(1) = C_{10}^0, I(H) = M_1^0, I(2) = D_{10}^0.
  inline ATElement op_I(ATElement const& x) {
    if (is_unit(x, Unit::one)) {
      return vC(1, 0, 0);
    }
    if (is_unit(x, Unit::halt)) {
      return vM(1, 0);
    }
    if (is_unit(x, Unit::two)) {
      return vD(1, 0, 0);
    }
    return zero();
  }

  namespace detail {
    inline bool matches(VElem const& v, Kind k, std::size_t state, int r) {
      return !v.barred && v.kind == k && v.state == state && v.r == r;
    }

    // The unbarred lines of L_{irt} / R_{irt}; nullopt where they do not
    // apply.
    inline std::optional<ATElement> move_base(tm::Instruction const& ins,
                                              int                    t,
                                              ATElement const&       x,
                                              ATElement const&       y,
                                              VElem const&           u) {
      std::size_t i = ins.state, j = ins.next;
      int         r = ins.read, s = ins.write;
      bool        left = ins.dir == tm::Direction::left;

      if (is_unit(x, Unit::one) && is_unit(y, Unit::one)
          && matches(u, Kind::C, i, r)) {
        return vC(j, t, u.s);
      }
      if (is_unit(x, Unit::two) && is_unit(y, Unit::two)
          && matches(u, Kind::D, i, r)) {
        return vD(j, t, u.s);
      }
      if (left) {
        if (is_unit(x, Unit::halt) && is_unit(y, Unit::one)
            && matches(u, Kind::C, i, r) && u.s == t) {
          return vM(j, t);
        }
        if (is_unit(x, Unit::two) && is_unit(y, Unit::halt)
            && matches(u, Kind::M, i, r)) {
          return vD(j, t, s);
        }
      } else {
        if (is_unit(x, Unit::halt) && is_unit(y, Unit::one)
            && matches(u, Kind::M, i, r)) {
          return vC(j, t, s);
        }
        if (is_unit(x, Unit::two) && is_unit(y, Unit::halt)
            && matches(u, Kind::D, i, r) && u.s == t) {
          return vM(j, t);
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  // L_{irt} or R_{irt} for the instruction `ins`, by its direction.
  inline ATElement op_move(tm::Instruction const& ins,
                           int                    t,
                           ATElement const&       x,
                           ATElement const&       y,
                           ATElement const&       u) {
    auto const* v = std::get_if<VElem>(&u);
    if (v == nullptr) {
      return zero();
    }
    if (!v->barred) {
      return detail::move_base(ins, t, x, y, *v).value_or(zero());
    }
    VElem plain  = *v;
    plain.barred = false;
    if (auto out = detail::move_base(ins, t, x, y, plain)) {
      return bar(*out);
    }
    return zero();
  }

  inline ATElement op_U1(tm::Instruction const& ins,
                         int                    t,
                         ATElement const&       x,
                         ATElement const&       y,
                         ATElement const&       z,
                         ATElement const&       u) {
    if (!prec(x, z)) {
      return zero();
    }
    ATElement f = op_move(ins, t, x, y, u);
    if (is_zero(f)) {
      return zero();
    }
    return y == z ? f : bar(f);
  }

  inline ATElement op_U0(tm::Instruction const& ins,
                         int                    t,
                         ATElement const&       x,
                         ATElement const&       y,
                         ATElement const&       z,
                         ATElement const&       u) {
    if (!prec(x, z)) {
      return zero();
    }
    ATElement f = op_move(ins, t, y, z, u);
    if (is_zero(f)) {
      return zero();
    }
    return x == y ? f : bar(f);
  }

  inline ATElement op_K(ATElement const& x,
                        ATElement const& y,
                        ATElement const& z) {
    if (is_bar_of(x, y)) {
      return y;
    }
    if (x == y && is_bar_of(x, z)) {
      return z;
    }
    return meet(meet(x, y), z);
  }

  ////////////////////////////////////////////////////////////////////////
  // The algebra
  ////////////////////////////////////////////////////////////////////////

  enum class OpKind {
    zero,
    meet,
    mul,
    J,
    J_prime,
    S0,
    S1,
    S2,
    T,
    I,
    move,  // L_{irt} or R_{irt}
    U1,
    U0,
    K
  };

  struct OpInfo {
    OpKind      kind;
    std::string symbol;
    std::size_t arity;
    std::size_t instruction = 0;  // for move / U1 / U0
    int         t           = 0;
  };

  inline std::string move_symbol(tm::Instruction const& ins, int t) {
    return std::string(ins.dir == tm::Direction::left ? "L[" : "R[")
           + std::to_string(ins.state) + "," + std::to_string(ins.read) + ","
           + std::to_string(t) + "]";
  }

  class ATAlgebra {
   public:
    ATAlgebra(tm::TuringMachine machine, bool with_k)
        : _machine(std::move(machine)),
          _with_k(with_k),
          _codec(_machine.number_of_states()) {
      auto add = [&](OpKind k, std::string sym, std::size_t arity,
                     std::size_t ins = 0, int t = 0) {
        _ops.push_back({k, std::move(sym), arity, ins, t});
      };
      add(OpKind::zero, "zero", 0);
      add(OpKind::meet, "meet", 2);
      add(OpKind::mul, "mul", 2);
      add(OpKind::J, "J", 3);
      add(OpKind::J_prime, "J'", 3);
      add(OpKind::S0, "S0", 4);
      add(OpKind::S1, "S1", 4);
      add(OpKind::S2, "S2", 5);
      add(OpKind::T, "T", 4);
      add(OpKind::I, "I", 1);
      auto const& ins = _machine.instructions();
      // L family first, then R, each in instruction order.
      for (auto dir : {tm::Direction::left, tm::Direction::right}) {
        for (std::size_t k = 0; k < ins.size(); ++k) {
          if (ins[k].dir != dir) {
            continue;
          }
          for (int t = 0; t < 2; ++t) {
            add(OpKind::move, move_symbol(ins[k], t), 3, k, t);
          }
        }
      }
      std::size_t moves = _ops.size();
      for (std::size_t m = 10; m < moves; ++m) {
        auto f = _ops[m];
        add(OpKind::U1, "U1(" + f.symbol + ")", 4, f.instruction, f.t);
        add(OpKind::U0, "U0(" + f.symbol + ")", 4, f.instruction, f.t);
      }
      if (_with_k) {
        add(OpKind::K, "K", 3);
      }
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        _index.emplace(_ops[i].symbol, i);
      }
      build_carrier();
    }

    tm::TuringMachine const& machine() const noexcept {
      return _machine;
    }
    bool with_k() const noexcept {
      return _with_k;
    }
    ElementCodec const& codec() const noexcept {
      return _codec;
    }
    std::vector<OpInfo> const& ops() const noexcept {
      return _ops;
    }

    // Arities <= 3 are tabulated; arities 4 and 5 evaluate on demand.
    FiniteAlgebra const& carrier() const noexcept {
      return _carrier;
    }

    std::size_t size() const noexcept {
      return _codec.size();
    }

    std::optional<std::size_t> find(std::string_view symbol) const {
      auto it = _index.find(std::string(symbol));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    ATElement eval(std::size_t op, std::span<ATElement const> a) const {
      OpInfo const& info = _ops.at(op);
      return evaluate(info, instruction_of(info), a);
    }

    ATElement eval(std::string_view symbol, std::span<ATElement const> a) const {
      auto op = find(symbol);
      if (!op) {
        throw std::invalid_argument("unknown operation symbol '"
                                    + std::string(symbol) + "'");
      }
      return eval(*op, a);
    }

    ATElement eval(std::string_view symbol,
                   std::initializer_list<ATElement> a) const {
      return eval(symbol, std::span<ATElement const>(a.begin(), a.size()));
    }

    // Evaluation on encoded elements, straight from the case definitions.
    Element eval_index(std::size_t op, std::span<Element const> a) const {
      std::vector<ATElement> args;
      args.reserve(a.size());
      for (auto x : a) {
        args.push_back(_codec.decode(x));
      }
      return _codec.encode(eval(op, args));
    }

   private:
    tm::Instruction instruction_of(OpInfo const& info) const {
      bool uses = info.kind == OpKind::move || info.kind == OpKind::U1
                  || info.kind == OpKind::U0;
      return uses ? _machine.instructions()[info.instruction]
                  : tm::Instruction{};
    }

    static ATElement evaluate(OpInfo const&              info,
                              tm::Instruction const&     ins,
                              std::span<ATElement const> a) {
      if (a.size() != info.arity) {
        throw std::invalid_argument("operation '" + info.symbol + "' takes "
                                    + std::to_string(info.arity)
                                    + " arguments, got "
                                    + std::to_string(a.size()));
      }
      switch (info.kind) {
        case OpKind::zero:
          return zero();
        case OpKind::meet:
          return meet(a[0], a[1]);
        case OpKind::mul:
          return mul(a[0], a[1]);
        case OpKind::J:
          return op_J(a[0], a[1], a[2]);
        case OpKind::J_prime:
          return op_J_prime(a[0], a[1], a[2]);
        case OpKind::S0:
          return op_S0(a[0], a[1], a[2], a[3]);
        case OpKind::S1:
          return op_S1(a[0], a[1], a[2], a[3]);
        case OpKind::S2:
          return op_S2(a[0], a[1], a[2], a[3], a[4]);
        case OpKind::T:
          return op_T(a[0], a[1], a[2], a[3]);
        case OpKind::I:
          return op_I(a[0]);
        case OpKind::move:
          return op_move(ins, info.t, a[0], a[1], a[2]);
        case OpKind::U1:
          return op_U1(ins, info.t, a[0], a[1], a[2], a[3]);
        case OpKind::U0:
          return op_U0(ins, info.t, a[0], a[1], a[2], a[3]);
        case OpKind::K:
          return op_K(a[0], a[1], a[2]);
      }
      throw std::logic_error("unhandled operation kind");
    }

    // The operation closures own copies of what they read, so the algebra
    // stays freely copyable.
    void build_carrier() {
      std::vector<Operation> ops;
      for (auto const& info : _ops) {
        auto fn = [info, ins = instruction_of(info), codec = _codec](
                      std::span<Element const> a) {
          std::vector<ATElement> args;
          args.reserve(a.size());
          for (auto x : a) {
            args.push_back(codec.decode(x));
          }
          return codec.encode(evaluate(info, ins, args));
        };
        if (info.arity <= 3) {
          ops.push_back(
              Operation::tabulate(info.symbol, info.arity, size(), fn));
        } else {
          ops.push_back(Operation::lazy(info.symbol, info.arity, fn));
        }
      }
      _carrier = FiniteAlgebra(size(), std::move(ops));
    }

    tm::TuringMachine                            _machine;
    bool                                         _with_k;
    ElementCodec                                 _codec;
    std::vector<OpInfo>                          _ops;
    std::unordered_map<std::string, std::size_t> _index;
    FiniteAlgebra                                _carrier;
  };

  inline ATAlgebra build_at(tm::TuringMachine const& machine, bool with_k) {
    return ATAlgebra(machine, with_k);
  }

}  // namespace varietal::at

#endif  // VARIETAL_AT_ALGEBRA_HPP_
