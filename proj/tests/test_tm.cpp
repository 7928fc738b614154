#include "catch_amalgamated.hpp"

#include <random>
#include <string>
#include <variant>

#include "support.hpp"
#include "varietal/tm/turing_machine.hpp"

using namespace varietal::tm;

TEST_CASE("minimal machine parses", "[tm][parse]") {
  auto m = parse_tm("states: halt start\nstart 0 -> 0 L halt");
  REQUIRE(m.number_of_states() == 2);
  REQUIRE(m.max_state() == 1);
  REQUIRE(m.instructions().size() == 1);
  CHECK(m.instructions()[0]
        == Instruction{initial_state, 0, 0, Direction::left, halting_state});
  CHECK(m.state_name(0) == "halt");
}

TEST_CASE("comments and blank lines are ignored", "[tm][parse]") {
  auto m = parse_tm("# a machine\n\nstates: h s q   # three\n"
                    "s 0 -> 1 R q\n  # nothing\nq 1 -> 0 L h\n");
  CHECK(m.number_of_states() == 3);
  CHECK(m.instructions().size() == 2);
  CHECK(m.find(2, 1)->next == halting_state);
  CHECK(m.find(2, 0) == nullptr);
}

TEST_CASE("parse errors carry line and column", "[tm][parse]") {
  auto line_col = [](std::string const& text) {
    try {
      parse_tm(text, "m.tm");
    } catch (ParseError const& e) {
      return std::pair{e.line(), e.column()};
    }
    FAIL("no error for: " << text);
    return std::pair<std::size_t, std::size_t>{};
  };

  SECTION("duplicate (state, read)") {
    std::string text = "states: halt start\nstart 0 -> 0 L halt\n"
                       "start 0 -> 1 R halt";
    CHECK(line_col(text) == std::pair<std::size_t, std::size_t>{3, 1});
    CHECK_THROWS_WITH(parse_tm(text),
                      Catch::Matchers::ContainsSubstring("first given on line 2"));
  }
  SECTION("instruction out of the halting state") {
    CHECK(line_col("states: halt start\nhalt 0 -> 0 L start")
          == std::pair<std::size_t, std::size_t>{2, 1});
  }
  SECTION("unknown state") {
    CHECK(line_col("states: halt start\nstart 0 -> 0 L nowhere")
          == std::pair<std::size_t, std::size_t>{2, 16});
  }
  SECTION("syntax") {
    CHECK(line_col("start 0 -> 0 L halt").first == 1);
    CHECK(line_col("states: halt start\nstart 2 -> 0 L halt")
          == std::pair<std::size_t, std::size_t>{2, 7});
    CHECK(line_col("states: halt start\nstart 0 => 0 L halt")
          == std::pair<std::size_t, std::size_t>{2, 9});
    CHECK(line_col("states: halt start\nstart 0 -> 0 U halt")
          == std::pair<std::size_t, std::size_t>{2, 14});
    CHECK(line_col("states: halt start\nstart 0 -> 0 L").first == 2);
    CHECK(line_col("states: halt\n").first == 1);
    CHECK(line_col("states: a a b\n").second == 11);
    CHECK(line_col("").first >= 1);
  }
}

TEST_CASE("direct construction validates", "[tm]") {
  CHECK_THROWS_AS(TuringMachine({"h"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(TuringMachine({"h", "s"}, {{0, 0, 0, Direction::left, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TuringMachine({"h", "s"}, {{1, 0, 2, Direction::left, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TuringMachine({"h", "s"}, {{1, 0, 0, Direction::left, 5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TuringMachine({"h", "s"}, {{1, 0, 0, Direction::left, 0},
                                             {1, 0, 1, Direction::right, 1}}),
                  std::invalid_argument);
}

TEST_CASE("step semantics", "[tm][step]") {
  auto halting = parse_tm("states: halt start\nstart 0 -> 0 L halt");
  Configuration c;
  auto r = step(halting, c);
  REQUIRE(std::holds_alternative<Configuration>(r));
  auto const& n = std::get<Configuration>(r);
  CHECK(n.head == -1);
  CHECK(n.state == halting_state);
  CHECK(n.ones.empty());

  CHECK(std::get<Halted>(step(halting, n)) == Halted{false});

  auto writer = parse_tm("states: halt start\nstart 0 -> 1 R start");
  auto w      = std::get<Configuration>(step(writer, Configuration{}));
  CHECK(w.ones == std::set<std::int64_t>{0});
  CHECK(w.head == 1);
  CHECK(w.state == initial_state);

  // Writing 0 over a 1 clears the cell.
  auto eraser = parse_tm("states: halt start\nstart 1 -> 0 R start");
  Configuration one;
  one.ones = {0};
  CHECK(std::get<Configuration>(step(eraser, one)).ones.empty());
  CHECK(std::get<Halted>(step(eraser, Configuration{})) == Halted{true});
}

TEST_CASE("bounded runs", "[tm][run]") {
  auto halting = load_tm(testing::fixture("halting.tm"));
  auto looping = load_tm(testing::fixture("looping.tm"));
  CHECK(to_string(run_bounded(halting, 10)) == "HALTED(1)");
  CHECK(to_string(run_bounded(halting, 0)) == "RUNNING");
  CHECK(to_string(run_bounded(looping, 1'000'000)) == "RUNNING");

  // Moves right into a blank cell in a state that only reads 1: a stall,
  // reported as halting.
  auto stall = parse_tm("states: halt start q\nstart 0 -> 1 R q\nq 1 -> 1 L halt");
  auto out   = run_bounded(stall, 100);
  CHECK(out.halted());
  CHECK(out.stalled);
  CHECK(to_string(out) == "HALTED(1, stalled)");

  CHECK_THROWS(load_tm(testing::fixture("no-such-file.tm")));
}

TEST_CASE("run_bounded is monotone in the bound", "[tm][run][property]") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t states = 2 + testing::draw(rng, 4);
    std::vector<std::string> names{"h"};
    for (std::size_t s = 1; s < states; ++s) {
      names.push_back("s" + std::to_string(s));
    }
    std::vector<Instruction> ins;
    for (std::size_t s = 1; s < states; ++s) {
      for (int r = 0; r < 2; ++r) {
        if (testing::draw(rng, 5) == 0) {
          continue;
        }
        ins.push_back({s, r, static_cast<int>(testing::draw(rng, 2)),
                       testing::draw(rng, 2) ? Direction::left : Direction::right,
                       testing::draw(rng, states)});
      }
    }
    TuringMachine m(names, ins);
    auto          small = run_bounded(m, 30);
    if (small.halted()) {
      for (std::size_t bound : {31, 100, 1000}) {
        auto big = run_bounded(m, bound);
        REQUIRE(big.halted());
        REQUIRE(big.steps == small.steps);
        REQUIRE(big.stalled == small.stalled);
      }
    }
    // Finite support: the tape after k steps has at most k ones.
    Configuration c;
    for (std::size_t k = 0; k < 50; ++k) {
      auto r = step(m, c);
      if (std::holds_alternative<Halted>(r)) {
        break;
      }
      c = std::get<Configuration>(r);
      REQUIRE(c.ones.size() <= k + 1);
    }
  }
}
