// Turing machines in the 5-tuple formalism: parsing, validation and bounded
// simulation on the empty tape.
//
// States are numbered in declaration order: state 0 is the halting state and
// state 1 the initial state.

#ifndef VARIETAL_TM_TURING_MACHINE_HPP_
#define VARIETAL_TM_TURING_MACHINE_HPP_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace varietal::tm {

  enum class Direction : std::uint8_t { left, right };

  inline char to_char(Direction d) noexcept {
    return d == Direction::left ? 'L' : 'R';
  }

  using StateId = std::size_t;

  inline constexpr StateId halting_state = 0;
  inline constexpr StateId initial_state = 1;

  struct Instruction {
    StateId   state;
    int       read;
    int       write;
    Direction dir;
    StateId   next;

    friend bool operator==(Instruction const&, Instruction const&) = default;
  };

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string source, std::size_t line, std::size_t column,
               std::string const& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ":"
                             + std::to_string(column) + ": " + what),
          _source(std::move(source)),
          _line(line),
          _column(column) {}

    std::string const& source() const noexcept {
      return _source;
    }
    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::string _source;
    std::size_t _line;
    std::size_t _column;
  };

  // A deterministic machine over states mu_0 (halt), mu_1 (start), mu_2, ...
  class TuringMachine {
   public:
    // Throws std::invalid_argument if the machine violates an invariant.
    TuringMachine(std::vector<std::string> state_names,
                  std::vector<Instruction> instructions)
        : _names(std::move(state_names)), _instructions(std::move(instructions)) {
      if (_names.size() < 2) {
        throw std::invalid_argument(
            "a machine needs at least a halting and an initial state");
      }
      std::set<std::string> seen;
      for (auto const& name : _names) {
        if (!seen.insert(name).second) {
          throw std::invalid_argument("duplicate state name '" + name + "'");
        }
      }
      for (auto const& ins : _instructions) {
        if (ins.state >= _names.size() || ins.next >= _names.size()) {
          throw std::invalid_argument("instruction refers to an unknown state");
        }
        if (ins.read < 0 || ins.read > 1 || ins.write < 0 || ins.write > 1) {
          throw std::invalid_argument("tape symbols must be 0 or 1");
        }
        if (ins.state == halting_state) {
          throw std::invalid_argument("instruction out of the halting state");
        }
        auto key = std::make_pair(ins.state, ins.read);
        if (!_index.emplace(key, &ins - _instructions.data()).second) {
          throw std::invalid_argument("duplicate instruction for (state "
                                      + _names[ins.state] + ", read "
                                      + std::to_string(ins.read) + ")");
        }
      }
    }

    // Highest state index; the states are mu_0, ..., mu_n.
    std::size_t max_state() const noexcept {
      return _names.size() - 1;
    }

    std::size_t number_of_states() const noexcept {
      return _names.size();
    }

    std::vector<std::string> const& state_names() const noexcept {
      return _names;
    }

    std::string const& state_name(StateId s) const {
      return _names.at(s);
    }

    std::vector<Instruction> const& instructions() const noexcept {
      return _instructions;
    }

    Instruction const* find(StateId state, int read) const {
      auto it = _index.find({state, read});
      return it == _index.end() ? nullptr : &_instructions[it->second];
    }

   private:
    std::vector<std::string>                        _names;
    std::vector<Instruction>                        _instructions;
    std::map<std::pair<StateId, int>, std::size_t>  _index;
  };

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct Token {
      std::string text;
      std::size_t column;  // 1-based
    };

    inline std::vector<Token> tokenize(std::string_view line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        if (line[i] == '#') {
          break;
        }
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
          ++i;
          continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t'
               && line[i] != '\r' && line[i] != '#') {
          ++i;
        }
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
      }
      return out;
    }
  }  // namespace detail

  // Format, one item per line, '#' starts a comment:
  //
  //   states: <halt> <init> [more ...]
  //   <state> <read-bit> -> <write-bit> <L|R> <next-state>
  inline TuringMachine parse_tm(std::string_view text,
                                std::string      source = "<input>") {
    std::vector<std::string>            names;
    std::map<std::string, StateId>      ids;
    std::vector<Instruction>            instructions;
    std::map<std::pair<StateId, int>, std::size_t> first_line;
    bool                                have_header = false;

    std::size_t line_no = 0;
    std::size_t pos     = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) {
        eol = text.size();
      }
      std::string_view line = text.substr(pos, eol - pos);
      pos                   = eol + 1;
      ++line_no;

      auto tokens = detail::tokenize(line);
      if (tokens.empty()) {
        continue;
      }
      auto fail = [&](std::size_t column, std::string const& msg) {
        throw ParseError(source, line_no, column, msg);
      };

      if (!have_header) {
        if (tokens[0].text != "states:") {
          fail(tokens[0].column, "expected 'states:' header");
        }
        if (tokens.size() < 3) {
          fail(tokens.back().column + tokens.back().text.size(),
               "need a halting state and an initial state");
        }
        for (std::size_t k = 1; k < tokens.size(); ++k) {
          if (!ids.emplace(tokens[k].text, names.size()).second) {
            fail(tokens[k].column,
                 "duplicate state name '" + tokens[k].text + "'");
          }
          names.push_back(tokens[k].text);
        }
        have_header = true;
        continue;
      }

      if (tokens[0].text == "states:") {
        fail(tokens[0].column, "repeated 'states:' header");
      }
      if (tokens.size() != 6) {
        fail(tokens[0].column,
             "expected '<state> <read> -> <write> <L|R> <next>'");
      }
      auto state_of = [&](detail::Token const& t) -> StateId {
        auto it = ids.find(t.text);
        if (it == ids.end()) {
          fail(t.column, "unknown state '" + t.text + "'");
        }
        return it->second;
      };
      auto bit_of = [&](detail::Token const& t) -> int {
        if (t.text != "0" && t.text != "1") {
          fail(t.column, "expected a bit (0 or 1), got '" + t.text + "'");
        }
        return t.text[0] - '0';
      };

      Instruction ins{};
      ins.state = state_of(tokens[0]);
      ins.read  = bit_of(tokens[1]);
      if (tokens[2].text != "->") {
        fail(tokens[2].column, "expected '->'");
      }
      ins.write = bit_of(tokens[3]);
      if (tokens[4].text == "L") {
        ins.dir = Direction::left;
      } else if (tokens[4].text == "R") {
        ins.dir = Direction::right;
      } else {
        fail(tokens[4].column, "expected direction L or R");
      }
      ins.next = state_of(tokens[5]);

      if (ins.state == halting_state) {
        fail(tokens[0].column, "instruction out of the halting state '"
                                   + names[halting_state] + "'");
      }
      auto key = std::make_pair(ins.state, ins.read);
      if (auto it = first_line.find(key); it != first_line.end()) {
        fail(tokens[0].column,
             "duplicate instruction for (" + tokens[0].text + ", "
                 + tokens[1].text + "), first given on line "
                 + std::to_string(it->second));
      }
      first_line.emplace(key, line_no);
      instructions.push_back(ins);
    }
    if (!have_header) {
      throw ParseError(source, line_no, 1, "missing 'states:' header");
    }
    return TuringMachine(std::move(names), std::move(instructions));
  }

  inline TuringMachine load_tm(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tm(buf.str(), path);
  }

  ////////////////////////////////////////////////////////////////////////
  // Simulation
  ////////////////////////////////////////////////////////////////////////

  struct Configuration {
    std::set<std::int64_t> ones;  // positions holding 1
    std::int64_t           head  = 0;
    StateId                state = initial_state;

    int read() const {
      return ones.count(head) ? 1 : 0;
    }

    friend bool operator==(Configuration const&, Configuration const&)
        = default;
  };

  struct Halted {
    // True if the machine stopped in a non-halting state because no
    // instruction matched.
    bool stalled = false;

    friend bool operator==(Halted const&, Halted const&) = default;
  };

  using StepResult = std::variant<Configuration, Halted>;

  inline StepResult step(TuringMachine const& tm, Configuration const& c) {
    if (c.state == halting_state) {
      return Halted{false};
    }
    auto const* ins = tm.find(c.state, c.read());
    if (ins == nullptr) {
      return Halted{true};
    }
    Configuration next = c;
    if (ins->write == 1) {
      next.ones.insert(c.head);
    } else {
      next.ones.erase(c.head);
    }
    next.head += ins->dir == Direction::left ? -1 : 1;
    next.state = ins->next;
    return next;
  }

  struct RunOutcome {
    enum class Status { halted, running };
    Status      status  = Status::running;
    std::size_t steps   = 0;  // transitions executed
    bool        stalled = false;

    bool halted() const noexcept {
      return status == Status::halted;
    }
  };

  inline std::string to_string(RunOutcome const& r) {
    if (!r.halted()) {
      return "RUNNING";
    }
    return "HALTED(" + std::to_string(r.steps) + (r.stalled ? ", stalled" : "")
           + ")";
  }

  // Runs from the empty tape, head 0, initial state.
  inline RunOutcome run_bounded(TuringMachine const& tm, std::size_t max_steps) {
    Configuration c;
    RunOutcome    out;
    for (std::size_t k = 0;; ++k) {
      if (c.state == halting_state) {
        out.status = RunOutcome::Status::halted;
        out.steps  = k;
        return out;
      }
      if (tm.find(c.state, c.read()) == nullptr) {
        out.status  = RunOutcome::Status::halted;
        out.steps   = k;
        out.stalled = true;
        return out;
      }
      if (k == max_steps) {
        out.steps = k;
        return out;
      }
      c = std::get<Configuration>(step(tm, c));
    }
  }

}  // namespace varietal::tm

#endif  // VARIETAL_TM_TURING_MACHINE_HPP_
