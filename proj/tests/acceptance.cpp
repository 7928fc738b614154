// Acceptance run: one PASS/FAIL line per criterion.  Exit status is 0 only
// if every line is PASS.
//
//   acceptance [path/to/varietal]
//
// The CLI path is needed for the determinism check only.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "varietal/algebra/closure.hpp"
#include "varietal/algebra/congruence.hpp"
#include "varietal/algebra/lattice.hpp"
#include "varietal/at/algebra.hpp"
#include "varietal/bn/context.hpp"
#include "varietal/bn/verify.hpp"

using namespace varietal;

namespace {

  // Pinned limits, in seconds.
  constexpr double limit_universe    = 1;
  constexpr double limit_tables      = 10;
  constexpr double limit_monotone    = 60;
  constexpr double limit_structure   = 30;
  constexpr double limit_atomic      = 300;
  constexpr double limit_depth_n5    = 900;
  constexpr double limit_default     = 600;

  constexpr std::size_t monotone_samples = 1'000'000;
  constexpr std::size_t nonzero_samples  = 1'000'000;
  constexpr std::size_t oracle_instances = 50;
  constexpr std::size_t oracle_max_size  = 60;

  struct Outcome {
    bool        ok = true;
    std::string detail;

    void require(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  at::ATAlgebra const& plain() {
    static at::ATAlgebra a = at::build_at(testing::halting_machine(), false);
    return a;
  }
  at::ATAlgebra const& with_k() {
    static at::ATAlgebra a = at::build_at(testing::halting_machine(), true);
    return a;
  }

  void require_report(Outcome& out, bn::Report const& r) {
    std::string what = r.lemma + " n=" + std::to_string(r.n) + " "
                       + bn::to_string(r.status);
    if (!r.counterexamples.empty()) {
      what += ": " + r.counterexamples.front();
    }
    if (!r.note.empty()) {
      what += " (" + r.note + ")";
    }
    out.require(r.status == bn::Status::pass, what);
  }

  bn::VerifyOptions options() {
    bn::VerifyOptions opt;
    opt.samples = nonzero_samples;
    return opt;
  }

  ////////////////////////////////////////////////////////////////////////

  Outcome universe_sizes() {
    Outcome out;
    std::size_t expected[] = {48, 68, 88};
    for (std::size_t k = 2; k <= 4; ++k) {
      auto a = at::build_at(testing::machine_with_states(k), false);
      out.require(a.size() == expected[k - 2],
                  std::to_string(k) + " states: " + std::to_string(a.size()));
      // Listed by hand from the set definitions.
      std::set<std::string> names{"0", "1", "2", "H", "C", "bC", "D", "bD"};
      for (std::size_t i = 0; i < k; ++i) {
        auto si = std::to_string(i);
        for (std::string b : {"", "b"}) {
          for (int r = 0; r < 2; ++r) {
            for (int s = 0; s < 2; ++s) {
              auto sub = "[" + si + "," + std::to_string(r) + "]^" + std::to_string(s);
              names.insert(b + "C" + sub);
              names.insert(b + "D" + sub);
            }
            names.insert(b + "M[" + si + "]^" + std::to_string(r));
          }
        }
      }
      std::set<std::string> got;
      for (Element x = 0; x < a.size(); ++x) {
        got.insert(a.codec().name(x));
      }
      out.require(got == names, "element names differ from the enumeration");
    }
    return out;
  }

  Outcome case_tables() {
    Outcome     out;
    auto const& a  = with_k();
    auto        E  = [&](std::string const& s) { return a.codec().parse(s); };
    auto        eq = [&](std::string const& sym, std::vector<std::string> args,
                    std::string const& want) {
      std::vector<at::ATElement> v;
      for (auto const& s : args) {
        v.push_back(E(s));
      }
      auto got = a.codec().name(a.codec().encode(a.eval(sym, v)));
      out.require(got == want, sym + " gave " + got + ", expected " + want);
    };
    eq("meet", {"D", "D"}, "D");
    eq("meet", {"D", "bD"}, "0");
    eq("mul", {"2", "D"}, "D");
    eq("mul", {"H", "C"}, "D");
    eq("mul", {"1", "C"}, "C");
    eq("mul", {"H", "bC"}, "bD");
    eq("J", {"C", "C", "0"}, "C");
    eq("J", {"D", "bD", "D"}, "D");
    eq("J'", {"D", "bD", "0"}, "D");
    eq("J'", {"D", "D", "D"}, "D");
    eq("S2", {"D", "bD", "C", "C", "D"}, "C");
    eq("S2", {"1", "2", "C", "C", "C"}, "0");
    eq("S1", {"1", "C", "C", "D"}, "C");
    eq("S1", {"H", "C", "C", "C"}, "0");
    eq("S0", {"C[0,1]^0", "D", "D", "0"}, "D");
    eq("S0", {"C[1,0]^0", "D", "D", "D"}, "0");
    eq("T", {"2", "D", "2", "D"}, "D");
    eq("T", {"2", "D", "H", "C"}, "bD");
    eq("T", {"1", "C", "2", "D"}, "0");
    eq("I", {"1"}, "C[1,0]^0");
    eq("I", {"H"}, "M[1]^0");
    eq("I", {"2"}, "D[1,0]^0");
    eq("I", {"D"}, "0");
    eq("L[1,0,0]", {"2", "H", "M[1]^0"}, "D[0,0]^0");
    eq("L[1,0,1]", {"1", "1", "C[1,0]^1"}, "C[0,1]^1");
    eq("L[1,0,1]", {"H", "1", "C[1,0]^1"}, "M[0]^1");
    eq("U1(L[1,0,0])", {"1", "1", "1", "C[1,0]^0"}, "C[0,0]^0");
    eq("U0(L[1,0,0])", {"2", "2", "H", "M[1]^0"}, "D[0,0]^0");
    eq("K", {"bD", "D", "C"}, "D");
    eq("K", {"D", "D", "bD"}, "bD");

    auto r = at::build_at(tm::parse_tm("states: halt start\nstart 0 -> 1 R halt"),
                          false);
    auto rn = [&](std::string const& sym, std::vector<std::string> args) {
      std::vector<at::ATElement> v;
      for (auto const& s : args) {
        v.push_back(r.codec().parse(s));
      }
      return r.codec().name(r.codec().encode(r.eval(sym, v)));
    };
    out.require(rn("R[1,0,0]", {"H", "1", "M[1]^0"}) == "C[0,0]^1", "R on (H, 1)");
    out.require(rn("R[1,0,1]", {"2", "H", "D[1,0]^1"}) == "M[0]^1", "R on (2, H)");

    // Second evaluator on the whole universe.
    std::size_t n = a.size();
    std::vector<std::string> name(n);
    for (Element x = 0; x < n; ++x) {
      name[x] = a.codec().name(x);
    }
    std::size_t meet = *a.find("meet"), mul = *a.find("mul"), J = *a.find("J"),
                Jp = *a.find("J'"), K = *a.find("K");
    std::size_t mismatches = 0;
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        std::array<Element, 2> xy{x, y};
        mismatches += name[a.carrier().apply(meet, xy)] != testing::names::meet(name[x], name[y]);
        mismatches += name[a.carrier().apply(mul, xy)] != testing::names::mul(name[x], name[y]);
        for (Element z = 0; z < n; ++z) {
          std::array<Element, 3> xyz{x, y, z};
          mismatches += name[a.carrier().apply(J, xyz)]
                        != testing::names::J(name[x], name[y], name[z]);
          mismatches += name[a.carrier().apply(Jp, xyz)]
                        != testing::names::J_prime(name[x], name[y], name[z]);
          mismatches += name[a.carrier().apply(K, xyz)]
                        != testing::names::K(name[x], name[y], name[z]);
        }
      }
    }
    out.require(mismatches == 0,
                std::to_string(mismatches) + " disagreements with the second evaluator");
    return out;
  }

  Outcome monotonicity() {
    Outcome     out;
    auto const& a = with_k();
    std::vector<std::size_t> sampled;
    std::size_t              checked = 0;
    for (std::size_t op = 0; op < a.ops().size(); ++op) {
      auto const& info = a.ops()[op];
      if (info.arity <= 3) {
        auto st = testing::monotone_exhaustive(a, op);
        checked += st.checked;
        out.require(st.violations == 0, info.symbol + ": " + st.first);
      }
      bool wide = info.arity >= 4 || info.kind == at::OpKind::move
                  || info.symbol == "T";
      if (wide) {
        sampled.push_back(op);
      }
    }
    auto st = testing::monotone_sampled(a, sampled, monotone_samples, 20261016);
    out.require(st.violations == 0, st.first);
    out.require(st.checked >= monotone_samples,
                "only " + std::to_string(st.checked) + " samples");
    out.detail = out.ok ? std::to_string(checked) + " exhaustive pairs, "
                              + std::to_string(st.checked) + " samples"
                        : out.detail;
    return out;
  }

  Outcome lemma_range(std::string const& lemma, std::size_t lo, std::size_t hi) {
    Outcome out;
    auto    opt = options();
    for (std::size_t n = lo; n <= hi; ++n) {
      require_report(out, bn::run_lemma(lemma, plain(), with_k(), n, opt));
    }
    return out;
  }

  Outcome depth_growth() {
    Outcome out;
    auto    opt = options();
    std::string depths;
    for (std::size_t n = 2; n <= 5; ++n) {
      bn::VerifyOptions o = opt;
      if (n == 5) {
        o.budget.with_seconds(limit_depth_n5);
      }
      auto r = bn::run_lemma("depth", plain(), with_k(), n, o);
      if (n == 5 && r.status == bn::Status::skipped) {
        depths += " n=5 skipped";
        continue;
      }
      require_report(out, r);
      depths += " " + std::to_string(r.value("depth").value_or(-1));
    }
    if (out.ok) {
      out.detail = "depths" + depths;
    }
    return out;
  }

  Outcome semidistributivity() {
    Outcome out;
    for (std::size_t n : {2u, 3u}) {
      bn::BnContext ctx(plain(), n);
      auto          l = congruence_lattice(ctx.algebra(), 100'000);
      out.require(is_meet_semidistributive(l.lattice).holds,
                  "Con(B_" + std::to_string(n) + ") is not SD-meet");
      out.detail += "|Con(B_" + std::to_string(n) + ")| = "
                    + std::to_string(l.congruences.size()) + ", ";
    }
    auto m3 = is_meet_semidistributive(FiniteLattice::m3());
    out.require(!m3.holds && m3.counterexample.has_value(), "M3 passes");
    if (out.ok) {
      auto const& w = *m3.counterexample;
      out.detail += "M3 witness (" + std::to_string(w[0]) + "," + std::to_string(w[1])
                    + "," + std::to_string(w[2]) + ")";
    }
    return out;
  }

  Outcome oracle_equivalence() {
    Outcome         out;
    std::mt19937_64 rng(14);
    for (std::size_t t = 0; t < oracle_instances; ++t) {
      auto alg = testing::random_algebra(rng, 2 + testing::draw(rng, oracle_max_size - 1),
                                         t % 2 == 0);
      Element a = testing::draw(rng, alg.size());
      Element b = testing::draw(rng, alg.size());
      out.require(testing::same_relation(principal_congruence(alg, a, b),
                                         testing::naive_congruence(alg, a, b)),
                  "random instance " + std::to_string(t));
    }
    for (std::size_t n : {2u, 3u}) {
      bn::BnContext ctx(plain(), n);
      // The oracle walks every translation, so give it tables.
      auto table = restrict_to(ctx.algebra(), all_elements(ctx.algebra()));
      for (Element x = 0; x < ctx.size(); ++x) {
        for (Element y = x + 1; y < ctx.size(); ++y) {
          out.require(
              testing::same_relation(principal_congruence(ctx.algebra(), x, y),
                                     testing::naive_congruence(table, x, y)),
              "B_" + std::to_string(n) + " pair " + ctx.name_local(x) + ", "
                  + ctx.name_local(y));
        }
      }
    }
    return out;
  }

  std::string slurp(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  Outcome determinism(std::string const& cli) {
    Outcome out;
    if (cli.empty()) {
      out.require(false, "no CLI path given");
      return out;
    }
    std::string const tm = std::string(VARIETAL_FIXTURES) + "/halting.tm";
    std::vector<std::string> outputs;
    for (int run = 1; run <= 2; ++run) {
      std::string file = "acceptance_verify_" + std::to_string(run) + ".json";
      std::string cmd  = "\"" + cli + "\" verify --tm \"" + tm
                        + "\" --n 2..4 --seed 99 --jobs 2 --out " + file
                        + " 2>/dev/null";
      int rc = std::system(cmd.c_str());
      out.require(rc == 0, "verify run " + std::to_string(run) + " exited with "
                               + std::to_string(rc));
      outputs.push_back(slurp(file));
    }
    out.require(!outputs[0].empty() && outputs[0] == outputs[1],
                "reports differ between runs");
    return out;
  }

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  struct Criterion {
    std::string              title;
    double                   limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"universe sizes 48, 68, 88", limit_universe, universe_sizes},
      {"operation case tables", limit_tables, case_tables},
      {"monotonicity", limit_monotone, monotonicity},
      {"B_n structure, n = 2..5", limit_structure,
       [] { return lemma_range("structure", 2, 5); }},
      {"only meet, J, J', S2 nonzero, n = 2..4", limit_default,
       [] { return lemma_range("nonzero-ops", 2, 4); }},
      {"Cg(a, 0) atomic, n = 2..4", limit_atomic,
       [] { return lemma_range("atomic", 2, 4); }},
      {"J' chain, n = 2..6", limit_default,
       [] { return lemma_range("chain", 2, 6); }},
      {"b_n pairs only with c_n, n = 2..4", limit_default,
       [] { return lemma_range("f-char", 2, 4); }},
      {"subalgebra omission, n = 3, 4", limit_default,
       [] { return lemma_range("omission", 3, 4); }},
      {"support growth, n = 3, 4", limit_default,
       [] { return lemma_range("support-growth", 3, 4); }},
      {"Maltsev depth n - 1, n = 2..5", limit_depth_n5, depth_growth},
      {"depth 1 with K, n = 3, 4", limit_default,
       [] { return lemma_range("k-collapse", 3, 4); }},
      {"Con(B_2), Con(B_3) SD-meet, M3 not", limit_default, semidistributivity},
      {"principal congruence vs naive closure", limit_default, oracle_equivalence},
      {"verify is deterministic", limit_default, [&] { return determinism(cli); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const& c  = criteria[i];
    auto        t0 = std::chrono::steady_clock::now();
    Outcome     out;
    try {
      out = c.run();
    } catch (std::exception const& e) {
      out.ok     = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    if (out.ok && secs > c.limit) {
      out.ok     = false;
      out.detail = "took longer than " + std::to_string(static_cast<int>(c.limit)) + " s";
    }
    all = all && out.ok;
    std::printf("%s %2zu %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", i + 1,
                c.title.c_str(), secs, out.detail.empty() ? "" : ": ",
                out.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
