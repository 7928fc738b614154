// varietal: command-line driver for the machine, algebra and B_n checks.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input
// error, 3 nothing failed but some check was skipped for budget.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "varietal/algebra/lattice.hpp"
#include "varietal/bn/context.hpp"
#include "varietal/bn/verify.hpp"
#include "varietal/io/json.hpp"
#include "varietal/tm/turing_machine.hpp"

using namespace varietal;
using nlohmann::json;

namespace {

  enum ExitCode { ok = 0, failed = 1, usage = 2, skipped = 3 };

  struct Config {
    std::string   tm_path;
    std::string   n_range = "2..4";
    bool          with_k  = false;
    std::string   lemma;
    std::size_t   max_steps    = 1000;
    std::size_t   max_elements = std::size_t{1} << 22;
    std::size_t   max_pairs    = std::size_t{1} << 24;
    std::size_t   samples      = 1'000'000;
    std::optional<std::size_t> cap;
    unsigned      jobs    = 1;
    std::uint64_t seed    = 1;
    std::string   out;
    bool          timing  = false;
    bool          m3      = false;
  };

  std::pair<std::size_t, std::size_t> parse_range(std::string const& s) {
    auto dots = s.find("..");
    try {
      if (dots == std::string::npos) {
        std::size_t n = std::stoul(s);
        return {n, n};
      }
      return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
    } catch (std::exception const&) {
      throw CLI::ValidationError("--n", "expected k or a..b, got '" + s + "'");
    }
  }

  std::pair<std::size_t, std::size_t> checked_range(Config const& cfg) {
    auto [lo, hi] = parse_range(cfg.n_range);
    if (lo < 2 || hi < lo) {
      throw CLI::ValidationError("--n", "need 2 <= a <= b");
    }
    return {lo, hi};
  }

  Budget make_budget(Config const& cfg) {
    Budget b;
    b.max_elements = cfg.max_elements;
    b.max_pairs    = cfg.max_pairs;
    b.with_environment();
    return b;
  }

  void emit(Config const& cfg, json doc) {
    doc["schema"] = io::schema_version;
    std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty() || cfg.out == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      throw std::runtime_error("cannot write '" + cfg.out + "'");
    }
    f << text;
  }

  tm::TuringMachine machine(Config const& cfg) {
    if (cfg.tm_path.empty()) {
      throw CLI::ValidationError("--tm", "a machine file is required");
    }
    return tm::load_tm(cfg.tm_path);
  }

  int cmd_tm_run(Config const& cfg) {
    auto tm      = machine(cfg);
    auto outcome = tm::run_bounded(tm, cfg.max_steps);
    emit(cfg, json{{"outcome", tm::to_string(outcome)},
                   {"halted", outcome.halted()},
                   {"steps", outcome.steps},
                   {"stalled", outcome.stalled},
                   {"max_steps", cfg.max_steps}});
    return ok;
  }

  int cmd_algebra_build(Config const& cfg) {
    auto at = at::build_at(machine(cfg), cfg.with_k);
    emit(cfg, io::to_json(at));
    return ok;
  }

  int cmd_bn_build(Config const& cfg) {
    auto [n, hi] = checked_range(cfg);
    if (n != hi) {
      throw CLI::ValidationError("--n", "bn build takes a single width");
    }
    auto at  = at::build_at(machine(cfg), cfg.with_k);
    auto ctx = bn::BnContext(at, n, std::nullopt, make_budget(cfg));
    json elements = json::array();
    for (Element x = 0; x < ctx.size(); ++x) {
      elements.push_back(ctx.name_local(x));
    }
    json coords = json::array();
    for (auto p : ctx.p_universe()) {
      coords.push_back(at.codec().name(p));
    }
    json gens = json::array();
    for (auto g : ctx.generators()) {
      gens.push_back(bn::BnContext::name(ctx.decode(g)));
    }
    emit(cfg, json{{"n", n},
                   {"with_k", cfg.with_k},
                   {"size", ctx.size()},
                   {"coordinates", coords},
                   {"generators", gens},
                   {"elements", elements}});
    return ok;
  }

  // Runs every (n, lemma) job, `jobs` at a time; results are stored by job
  // index so the report order does not depend on scheduling.
  int cmd_verify(Config const& cfg) {
    auto [lo, hi] = checked_range(cfg);
    std::vector<std::string> lemmas;
    if (cfg.lemma.empty()) {
      lemmas = bn::lemma_names();
    } else {
      lemmas.push_back(cfg.lemma);
    }
    auto tm    = machine(cfg);
    auto plain = at::build_at(tm, false);
    auto withk = at::build_at(tm, true);

    bn::VerifyOptions opt;
    opt.seed    = cfg.seed;
    opt.samples = cfg.samples;
    opt.cap     = cfg.cap;
    opt.budget  = make_budget(cfg);

    std::vector<std::pair<std::size_t, std::string>> todo;
    for (std::size_t n = lo; n <= hi; ++n) {
      for (auto const& l : lemmas) {
        todo.emplace_back(n, l);
      }
    }
    std::vector<bn::Report>  reports(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < todo.size();) {
        reports[i] = bn::run_lemma(todo[i].second, plain, withk, todo[i].first,
                                   opt);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1u, cfg.jobs); ++j) {
      pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
      t.join();
    }

    bool any_fail = false;
    bool any_skip = false;
    json list     = json::array();
    for (auto const& r : reports) {
      any_fail = any_fail || r.status == bn::Status::fail;
      any_skip = any_skip || r.status == bn::Status::skipped;
      list.push_back(io::to_json(r, cfg.timing));
    }
    std::string status = any_fail ? "FAIL" : any_skip ? "SKIPPED" : "PASS";
    emit(cfg, json{{"tm", cfg.tm_path},
                   {"n", {lo, hi}},
                   {"seed", cfg.seed},
                   {"samples", cfg.samples},
                   {"pass", !any_fail && !any_skip},
                   {"status", status},
                   {"reports", list}});
    for (auto const& r : reports) {
      std::cerr << bn::to_string(r.status) << "  n=" << r.n << "  " << r.lemma
                << (r.note.empty() ? "" : "  (" + r.note + ")") << "\n";
    }
    return any_fail ? failed : any_skip ? skipped : ok;
  }

  int cmd_depth(Config const& cfg) {
    auto [lo, hi] = checked_range(cfg);
    auto   at     = at::build_at(machine(cfg), cfg.with_k);
    Budget budget = make_budget(cfg);
    json   rows   = json::array();
    bool   skip   = false;
    for (std::size_t n = lo; n <= hi; ++n) {
      try {
        bn::BnContext ctx(at, n, std::nullopt, budget);
        std::size_t   cap = cfg.cap.value_or(n + 2);
        auto g   = pair_depth_graph(ctx.algebra(), ctx.a(), ctx.zero(), cap,
                                    budget);
        auto res = minimax_chain(g, ctx.size(), ctx.b(n), ctx.c(n));
        json chain = json::array();
        for (auto x : res.chain) {
          chain.push_back(ctx.name_local(x));
        }
        rows.push_back({{"n", n},
                        {"universe", ctx.size()},
                        {"depth", res.depth ? json(*res.depth) : json(nullptr)},
                        {"chain", chain},
                        {"link_depths", res.link_depths},
                        {"pairs", g.entries().size()},
                        {"graph", io::to_json(g)}});
      } catch (BudgetExceeded const& e) {
        skip = true;
        rows.push_back({{"n", n}, {"status", "SKIPPED"}, {"note", e.what()}});
      }
    }
    emit(cfg, json{{"with_k", cfg.with_k}, {"results", rows}});
    return skip ? skipped : ok;
  }

  int cmd_sd_meet(Config const& cfg) {
    json doc;
    FiniteLattice lattice;
    if (cfg.m3) {
      lattice = FiniteLattice::m3();
      doc["target"] = "M3";
    } else {
      auto [n, hi] = checked_range(cfg);
      if (n != hi) {
        throw CLI::ValidationError("--n", "sd-meet takes a single width");
      }
      auto   at     = at::build_at(machine(cfg), cfg.with_k);
      Budget budget = make_budget(cfg);
      try {
        bn::BnContext ctx(at, n, std::nullopt, budget);
        auto con = congruence_lattice(ctx.algebra(), cfg.max_elements, budget);
        lattice  = con.lattice;
        doc["target"]   = "B_" + std::to_string(n);
        doc["universe"] = ctx.size();
      } catch (BudgetExceeded const& e) {
        emit(cfg, json{{"status", "SKIPPED"}, {"note", e.what()}});
        return skipped;
      }
    }
    auto sd = is_meet_semidistributive(lattice);
    doc["congruences"] = lattice.size;
    doc["sd_meet"]     = sd.holds;
    doc["counterexample"] =
        sd.counterexample ? json(*sd.counterexample) : json(nullptr);
    emit(cfg, doc);
    return ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machine algebras and the B_n witness family"};
  app.require_subcommand(1);
  Config cfg;

  auto add_tm = [&](CLI::App* c) {
    c->add_option("--tm", cfg.tm_path, "machine description file");
  };
  auto add_common = [&](CLI::App* c) {
    add_tm(c);
    c->add_option("--out", cfg.out, "write JSON here instead of stdout");
    c->add_option("--max-elements", cfg.max_elements, "closure size budget")
        ->check(CLI::PositiveNumber);
    c->add_option("--max-pairs", cfg.max_pairs, "pair graph budget")
        ->check(CLI::PositiveNumber);
  };

  auto* tm_cmd = app.add_subcommand("tm", "Turing machines");
  tm_cmd->require_subcommand(1);
  auto* tm_run = tm_cmd->add_subcommand("run", "run on the empty tape");
  tm_run->add_option("file", cfg.tm_path, "machine description file");
  add_common(tm_run);
  tm_run->add_option("--max-steps", cfg.max_steps, "step bound");

  auto* alg_cmd = app.add_subcommand("algebra", "the algebra of a machine");
  alg_cmd->require_subcommand(1);
  auto* alg_build = alg_cmd->add_subcommand("build", "list elements and ops");
  add_common(alg_build);
  alg_build->add_flag("--with-k", cfg.with_k, "add the operation K");

  auto* bn_cmd = app.add_subcommand("bn", "the subpowers B_n");
  bn_cmd->require_subcommand(1);
  auto* bn_build = bn_cmd->add_subcommand("build", "enumerate B_n");
  auto* bn_verify = bn_cmd->add_subcommand("verify", "check one lemma");
  auto* verify    = app.add_subcommand("verify", "check lemmas over a range");
  auto* depth     = app.add_subcommand("depth", "Maltsev depth of (b_n, c_n)");
  auto* sd        = app.add_subcommand("sd-meet", "congruence lattice SD-meet");

  for (auto* c : {bn_build, bn_verify, verify, depth, sd}) {
    add_common(c);
    c->add_option("--n", cfg.n_range, "width k or range a..b");
    c->add_flag("--with-k", cfg.with_k, "add the operation K");
  }
  for (auto* c : {bn_verify, verify}) {
    c->add_option("--lemma", cfg.lemma, "one check (default: all)")
        ->check(CLI::IsMember(bn::lemma_names()));
    c->add_option("--seed", cfg.seed, "seed for sampled checks");
    c->add_option("--samples", cfg.samples, "sampled tuples per check");
    c->add_option("--jobs", cfg.jobs, "parallel checks")
        ->check(CLI::PositiveNumber);
    c->add_flag("--timing", cfg.timing, "record wall-clock seconds");
  }
  for (auto* c : {bn_verify, verify, depth}) {
    c->add_option("--cap", cfg.cap, "pair graph depth cap (default n + 2)");
  }
  sd->add_flag("--m3", cfg.m3, "check the lattice M3 instead");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    if (tm_run->parsed()) {
      return cmd_tm_run(cfg);
    }
    if (alg_build->parsed()) {
      return cmd_algebra_build(cfg);
    }
    if (bn_build->parsed()) {
      return cmd_bn_build(cfg);
    }
    if (bn_verify->parsed()) {
      if (cfg.lemma.empty()) {
        throw CLI::ValidationError("--lemma", "bn verify needs a lemma");
      }
      return cmd_verify(cfg);
    }
    if (verify->parsed()) {
      return cmd_verify(cfg);
    }
    if (depth->parsed()) {
      return cmd_depth(cfg);
    }
    return cmd_sd_meet(cfg);
  } catch (BudgetExceeded const& e) {
    std::cerr << "varietal: budget exhausted: " << e.what() << "\n";
    return skipped;
  } catch (std::exception const& e) {
    std::cerr << "varietal: " << e.what() << "\n";
    return usage;
  }
}
