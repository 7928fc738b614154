// Checks of the structural claims about B_n.  Each check returns a Report;
// failures are report content, budget exhaustion surfaces as
// BudgetExceeded and is turned into a skipped report by run_lemma.

#ifndef VARIETAL_BN_VERIFY_HPP_
#define VARIETAL_BN_VERIFY_HPP_

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "varietal/algebra/budget.hpp"
#include "varietal/algebra/closure.hpp"
#include "varietal/algebra/congruence.hpp"
#include "varietal/algebra/depth.hpp"
#include "varietal/at/algebra.hpp"
#include "varietal/bn/context.hpp"

namespace varietal::bn {

  enum class Status { pass, fail, skipped };

  inline std::string to_string(Status s) {
    switch (s) {
      case Status::pass:
        return "PASS";
      case Status::fail:
        return "FAIL";
      default:
        return "SKIPPED";
    }
  }

  struct Report {
    std::string              lemma;
    std::size_t              n      = 0;
    Status                   status = Status::pass;
    std::vector<std::string> witnesses;
    std::vector<std::string> counterexamples;
    // Named integer results (depths, counts), in insertion order.
    std::vector<std::pair<std::string, std::int64_t>> values;
    std::string              note;
    std::size_t              universe = 0;
    std::size_t              pairs    = 0;
    double                   seconds  = 0;

    bool passed() const noexcept {
      return status == Status::pass;
    }

    std::optional<std::int64_t> value(std::string_view key) const {
      for (auto const& [k, v] : values) {
        if (k == key) {
          return v;
        }
      }
      return std::nullopt;
    }

    void set(std::string key, std::int64_t v) {
      for (auto& [k, old] : values) {
        if (k == key) {
          old = v;
          return;
        }
      }
      values.emplace_back(std::move(key), v);
    }

    // Keeps reports readable when a check fails everywhere.
    void fail(std::string what) {
      status = Status::fail;
      if (counterexamples.size() < max_listed) {
        counterexamples.push_back(std::move(what));
      }
    }

    static constexpr std::size_t max_listed = 32;
  };

  struct VerifyOptions {
    std::uint64_t              seed    = 1;
    std::size_t                samples = 1'000'000;
    std::optional<std::size_t> cap;  // pair-BFS cap, default n + 2
    Budget                     budget;
  };

  namespace detail {
    inline Report start(std::string lemma, BnContext const& ctx) {
      Report r;
      r.lemma    = std::move(lemma);
      r.n        = ctx.n();
      r.universe = ctx.size();
      return r;
    }

    inline bool is_D(at::ATElement const& x) {
      return x == at::D();
    }
    inline bool is_bD(at::ATElement const& x) {
      return x == at::bar(at::D());
    }

    // Non-negative integer below `bound`, reproducible across standard
    // libraries (unlike the distributions).
    inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
      return static_cast<std::size_t>(rng() % bound);
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Structure of the elements
  ////////////////////////////////////////////////////////////////////////

  // The four properties every x in B_n has:
  //   (1) x(1) ∈ {0, D} and every x(l) ∈ {0, D, ∂D};
  //   (2) x(l) = ∂D for at most one l;
  //   (3) x(k) = 0 for every k > l when x(l) = ∂D;
  //   (4) x(l) = ∂D implies x = d_l or x(k) = 0 for some k < l.
  // Returns the violated items (1-based), empty if none.
  inline std::vector<int> structure_violations(Tuple const& x) {
    std::vector<int> out;
    std::size_t const n = x.size();
    bool item1 = is_zero(x[0]) || detail::is_D(x[0]);
    for (auto const& v : x) {
      item1 = item1 && (is_zero(v) || detail::is_D(v) || detail::is_bD(v));
    }
    if (!item1) {
      out.push_back(1);
    }
    std::vector<std::size_t> bars;
    for (std::size_t l = 0; l < n; ++l) {
      if (detail::is_bD(x[l])) {
        bars.push_back(l);
      }
    }
    if (bars.size() > 1) {
      out.push_back(2);
    }
    bool item3 = true;
    bool item4 = true;
    for (auto l : bars) {
      for (std::size_t k = l + 1; k < n; ++k) {
        item3 = item3 && is_zero(x[k]);
      }
      bool some_zero = false;
      for (std::size_t k = 0; k < l; ++k) {
        some_zero = some_zero || is_zero(x[k]);
      }
      item4 = item4 && (some_zero || x == d_tuple(n, l + 1));
    }
    if (!item3) {
      out.push_back(3);
    }
    if (!item4) {
      out.push_back(4);
    }
    return out;
  }

  inline Report verify_structure(BnContext const& ctx) {
    Report      r = detail::start("structure", ctx);
    std::size_t with_bar = 0;
    for (Element x = 0; x < ctx.size(); ++x) {
      Tuple t = ctx.tuple(x);
      for (int item : structure_violations(t)) {
        r.fail(BnContext::name(t) + " violates item " + std::to_string(item));
      }
      with_bar += std::any_of(t.begin(), t.end(), detail::is_bD) ? 1 : 0;
    }
    r.set("elements", static_cast<std::int64_t>(ctx.size()));
    r.set("elements_with_bar", static_cast<std::int64_t>(with_bar));
    if (r.passed()) {
      r.witnesses.push_back(BnContext::name(d_tuple(ctx.n(), ctx.n()))
                            + " satisfies item 4 as d_"
                            + std::to_string(ctx.n()));
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Which operations are nonzero on B_n
  ////////////////////////////////////////////////////////////////////////

  inline bool allowed_nonzero(std::string_view symbol) {
    return symbol == "meet" || symbol == "J" || symbol == "J'"
           || symbol == "S2";
  }

  // Exhaustive over B_n for every operation (distinct images only), then a
  // seeded sample of arity 4 and 5 argument tuples evaluated directly by the
  // case definitions, coordinate by coordinate.
  inline Report verify_nonzero_ops(BnContext const&     ctx,
                                   VerifyOptions const& opt) {
    Report      r    = detail::start("nonzero-ops", ctx);
    auto const& alg  = ctx.algebra();
    auto const& at   = ctx.at_algebra();
    Element     zero = ctx.zero();
    auto        domain = all_elements(alg);
    std::size_t work   = 0;

    std::vector<std::string> nonzero;
    for (std::size_t op = 0; op < alg.num_ops(); ++op) {
      auto const& sig    = alg.signature(op);
      bool        any    = false;
      bool        allowed = allowed_nonzero(sig.symbol);
      enumerate_images(
          alg, op, domain, std::nullopt, {},
          [&](std::span<Element const> v, std::span<Element const> args) {
            if (v[0] == zero) {
              return;
            }
            any = true;
            if (!allowed) {
              std::string call = sig.symbol + "(";
              for (std::size_t k = 0; k < args.size(); ++k) {
                call += (k ? ", " : "") + ctx.name_local(args[k]);
              }
              r.fail(call + ") = " + ctx.name_local(v[0]));
            }
          },
          opt.budget, work);
      if (any) {
        nonzero.push_back(sig.symbol);
      }
    }
    for (auto const& s : nonzero) {
      r.witnesses.push_back("nonzero on B_n: " + s);
    }

    // Sampled tuples, evaluated without the tables.
    std::vector<std::size_t> wide;
    for (std::size_t op = 0; op < at.ops().size(); ++op) {
      if (at.ops()[op].arity >= 4 && !allowed_nonzero(at.ops()[op].symbol)) {
        wide.push_back(op);
      }
    }
    std::vector<Tuple> tuples;
    for (Element x = 0; x < ctx.size(); ++x) {
      tuples.push_back(ctx.tuple(x));
    }
    std::mt19937_64 rng(opt.seed);
    std::size_t     sampled = 0;
    if (!wide.empty()) {
      std::vector<at::ATElement> args;
      for (std::size_t k = 0; k < opt.samples; ++k) {
        if ((k & 0xffff) == 0) {
          opt.budget.check_time();
        }
        std::size_t op    = wide[detail::draw(rng, wide.size())];
        std::size_t arity = at.ops()[op].arity;
        std::vector<std::size_t> pick(arity);
        for (auto& p : pick) {
          p = detail::draw(rng, tuples.size());
        }
        for (std::size_t l = 0; l < ctx.n(); ++l) {
          args.clear();
          for (auto p : pick) {
            args.push_back(tuples[p][l]);
          }
          if (!is_zero(at.eval(op, args))) {
            r.fail("sampled " + at.ops()[op].symbol + " nonzero in coordinate "
                   + std::to_string(l + 1));
            break;
          }
        }
        ++sampled;
      }
    }
    r.set("sampled_tuples", static_cast<std::int64_t>(sampled));
    r.set("seed", static_cast<std::int64_t>(opt.seed));
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Atomicity of Cg(a, 0)
  ////////////////////////////////////////////////////////////////////////

  inline Report verify_atomicity(BnContext const& ctx, VerifyOptions const& opt) {
    Report r      = detail::start("atomic", ctx);
    auto const& alg = ctx.algebra();
    Congruence theta = principal_congruence(alg, ctx.a(), ctx.zero(), opt.budget);
    r.set("theta_blocks", static_cast<std::int64_t>(theta.num_blocks()));
    r.set("theta_pairs", static_cast<std::int64_t>(theta.nontrivial_pairs()));
    if (theta.is_identity()) {
      r.fail("Cg(a, 0) is trivial");
      return r;
    }
    std::size_t checked = 0;
    for (auto const& block : theta.blocks()) {
      for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = i + 1; j < block.size(); ++j) {
          opt.budget.check_time();
          auto sub = principal_congruence(alg, block[i], block[j], opt.budget);
          ++checked;
          if (!theta.refines(sub)) {
            r.fail("Cg(" + ctx.name_local(block[i]) + ", "
                   + ctx.name_local(block[j]) + ") is strictly below Cg(a, 0)");
          }
        }
      }
    }
    r.pairs = checked;
    if (theta.related(ctx.b(ctx.n()), ctx.c(ctx.n()))) {
      r.witnesses.push_back("(b_n, c_n) lies in Cg(a, 0) and regenerates it");
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // The J' chain from (a, 0) to (b_n, c_n)
  ////////////////////////////////////////////////////////////////////////

  struct ChainPolynomial {
    // Innermost first: J'(b_l, d_l, x) for l = 2..n.
    std::vector<TranslationStep> steps;
    std::vector<Element>         images_a;  // f_l(a), l = 2..n
    std::vector<Element>         images_0;  // f_l(0)
  };

  inline ChainPolynomial chain_polynomial(BnContext const& ctx) {
    ChainPolynomial out;
    std::size_t     jp = ctx.op_index("J'");
    Element         x  = ctx.a();
    Element         y  = ctx.zero();
    for (std::size_t l = 2; l <= ctx.n(); ++l) {
      TranslationStep s{jp, 2, {ctx.b(l), ctx.d(l)}};
      x = s.apply(ctx.algebra(), x);
      y = s.apply(ctx.algebra(), y);
      out.steps.push_back(std::move(s));
      out.images_a.push_back(x);
      out.images_0.push_back(y);
    }
    return out;
  }

  inline Report explicit_chain_polynomial(BnContext const&     ctx,
                                          VerifyOptions const& opt) {
    Report r     = detail::start("chain", ctx);
    auto   chain = chain_polynomial(ctx);
    for (std::size_t l = 2; l <= ctx.n(); ++l) {
      Element fa = chain.images_a[l - 2];
      Element f0 = chain.images_0[l - 2];
      if (fa != ctx.b(l)) {
        r.fail("J' chain sends a to " + ctx.name_local(fa) + " at step "
               + std::to_string(l) + ", expected b_" + std::to_string(l));
      }
      if (f0 != ctx.c(l)) {
        r.fail("J' chain sends 0 to " + ctx.name_local(f0) + " at step "
               + std::to_string(l) + ", expected c_" + std::to_string(l));
      }
    }
    r.set("translations", static_cast<std::int64_t>(chain.steps.size()));
    r.witnesses.push_back("f(a) = " + ctx.name_local(chain.images_a.back()));
    r.witnesses.push_back("f(0) = " + ctx.name_local(chain.images_0.back()));

    auto theta = principal_congruence(ctx.algebra(), ctx.a(), ctx.zero(),
                                      opt.budget);
    bool in = theta.related(ctx.b(ctx.n()), ctx.c(ctx.n()));
    r.set("generic_membership", in ? 1 : 0);
    if (!in) {
      r.fail("principal congruence does not relate b_n and c_n");
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Polynomials with f(a) = b_n != f(0)
  ////////////////////////////////////////////////////////////////////////

  inline std::size_t default_cap(std::size_t n, VerifyOptions const& opt) {
    return opt.cap.value_or(n + 2);
  }

  inline Report verify_f_characterization(BnContext const&     ctx,
                                          VerifyOptions const& opt) {
    Report      r   = detail::start("f-char", ctx);
    std::size_t cap = default_cap(ctx.n(), opt);
    auto g = pair_depth_graph(ctx.algebra(), ctx.a(), ctx.zero(), cap,
                              opt.budget);
    r.pairs     = g.entries().size();
    Element bn  = ctx.b(ctx.n());
    Element cn  = ctx.c(ctx.n());
    std::size_t partners = 0;
    for (auto const& e : g.entries()) {
      if (e.pair.trivial() || !e.pair.contains(bn)) {
        continue;
      }
      ++partners;
      Element other = e.pair.other(bn);
      if (other != cn) {
        r.fail("b_n paired with " + ctx.name_local(other) + " at depth "
               + std::to_string(e.depth));
      }
    }
    r.set("cap", static_cast<std::int64_t>(cap));
    r.set("saturated", g.saturated() ? 1 : 0);
    r.set("partners_of_b_n", static_cast<std::int64_t>(partners));
    if (auto d = g.depth(bn, cn)) {
      r.witnesses.push_back("{b_n, c_n} reached at depth " + std::to_string(*d));
    } else {
      r.fail("{b_n, c_n} not reached within the cap");
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Proper subalgebras lose (b_n, c_n)
  ////////////////////////////////////////////////////////////////////////

  inline Report verify_subalgebra_omission(BnContext const&     ctx,
                                           VerifyOptions const& opt) {
    Report      r = detail::start("omission", ctx);
    std::size_t n = ctx.n();
    Tuple       bn = b_tuple(n, n);
    Tuple       cn = c_tuple(n, n);
    for (std::size_t k = 2; k <= n; ++k) {
      std::string tag = "k=" + std::to_string(k) + ": ";
      BnContext   sub(ctx.at_algebra(), n, k, opt.budget);
      bool        inside = true;
      for (Element x = 0; x < sub.size(); ++x) {
        inside = inside && ctx.local(sub.tuple(x)).has_value();
      }
      if (!inside || sub.size() >= ctx.size()) {
        r.fail(tag + "C is not a proper subset of B_n");
      }
      r.set("C_size_k" + std::to_string(k), static_cast<std::int64_t>(sub.size()));
      if (sub.local(bn) && sub.local(cn)) {
        auto theta = principal_congruence(sub.algebra(), sub.a(), sub.zero(),
                                          opt.budget);
        if (theta.related(*sub.local(bn), *sub.local(cn))) {
          r.fail(tag + "(b_n, c_n) lies in Cg^C(a, 0)");
        } else {
          r.witnesses.push_back(tag + "(b_n, c_n) not in Cg^C(a, 0)");
        }
      } else {
        r.witnesses.push_back(tag + "C does not contain both b_n and c_n");
      }
      // J(b_n, d_k, b_n) = b_k: a subalgebra with b_n and d_k has b_k.
      Element j = ctx.algebra().apply(
          ctx.op_index("J"),
          std::array<Element, 3>{ctx.b(n), ctx.d(k), ctx.b(n)});
      if (j != ctx.b(k)) {
        r.fail(tag + "J(b_n, d_k, b_n) = " + ctx.name_local(j));
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Support growth along translations
  ////////////////////////////////////////////////////////////////////////

  // Over every pair r, s of B_n with r(1) != s(1) = 0 and r(l) = s(l) for
  // l >= 2, and every fundamental translation g with constants in B_n:
  // g(r) != g(s) implies |supp g(r)| <= |supp r| + 1.  All operations are
  // enumerated, which covers the four that are nonzero on B_n.
  inline Report verify_support_growth(BnContext const&     ctx,
                                      VerifyOptions const& opt) {
    Report      r      = detail::start("support-growth", ctx);
    auto const& alg    = ctx.algebra();
    auto        domain = all_elements(alg);
    std::vector<std::size_t> supp(ctx.size());
    for (Element x = 0; x < ctx.size(); ++x) {
      supp[x] = support_size(ctx.tuple(x));
    }

    std::size_t hypothesis = 0;
    std::size_t separated  = 0;
    std::size_t growth_max = 0;
    std::size_t work       = 0;
    for (Element x = 0; x < ctx.size(); ++x) {
      Tuple rt = ctx.tuple(x);
      if (is_zero(rt[0])) {
        continue;
      }
      Tuple st = rt;
      st[0]    = at::zero();
      auto y   = ctx.local(st);
      if (!y) {
        continue;
      }
      ++hypothesis;
      Element const tracks[2] = {x, *y};
      for (std::size_t op = 0; op < alg.num_ops(); ++op) {
        std::size_t arity = alg.signature(op).arity;
        for (std::size_t p = 0; p < arity; ++p) {
          opt.budget.check_time();
          enumerate_images(
              alg, op, domain, p, std::span<Element const>(tracks, 2),
              [&](std::span<Element const> v, std::span<Element const> args) {
                if (v[0] == v[1]) {
                  return;
                }
                ++separated;
                if (supp[v[0]] > supp[x]) {
                  growth_max = std::max(growth_max, supp[v[0]] - supp[x]);
                }
                if (supp[v[0]] > supp[x] + 1) {
                  std::string call = alg.signature(op).symbol + "(";
                  for (std::size_t k = 0; k < args.size(); ++k) {
                    call += (k ? ", " : "")
                            + (k == p ? std::string("_") : ctx.name_local(args[k]));
                  }
                  r.fail("r = " + ctx.name_local(x) + ", g = " + call
                         + "): support " + std::to_string(supp[x]) + " -> "
                         + std::to_string(supp[v[0]]));
                }
              },
              opt.budget, work);
        }
      }
    }
    r.pairs = hypothesis;
    r.set("hypothesis_pairs", static_cast<std::int64_t>(hypothesis));
    r.set("separating_images", static_cast<std::int64_t>(separated));
    r.set("max_growth", static_cast<std::int64_t>(growth_max));
    if (hypothesis == 0) {
      r.fail("no pair satisfies the hypothesis");
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Maltsev depth of (b_n, c_n) over (a, 0)
  ////////////////////////////////////////////////////////////////////////

  inline Report bn_maltsev_depth(BnContext const& ctx, VerifyOptions const& opt) {
    Report      r   = detail::start("depth", ctx);
    std::size_t cap = default_cap(ctx.n(), opt);
    auto g = pair_depth_graph(ctx.algebra(), ctx.a(), ctx.zero(), cap,
                              opt.budget);
    r.pairs  = g.entries().size();
    auto res = minimax_chain(g, ctx.size(), ctx.b(ctx.n()), ctx.c(ctx.n()));
    r.set("cap", static_cast<std::int64_t>(cap));
    if (!res.depth) {
      r.fail("(b_n, c_n) not joined within the cap");
      return r;
    }
    r.set("depth", static_cast<std::int64_t>(*res.depth));
    std::string chain;
    for (std::size_t i = 0; i < res.chain.size(); ++i) {
      chain += (i ? " -[" + std::to_string(res.link_depths[i - 1]) + "]- " : "")
               + ctx.name_local(res.chain[i]);
    }
    r.witnesses.push_back(chain);
    if (*res.depth != ctx.n() - 1) {
      r.fail("depth " + std::to_string(*res.depth) + ", expected "
             + std::to_string(ctx.n() - 1));
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // With K the depth collapses to 1
  ////////////////////////////////////////////////////////////////////////

  // b_2' = d_n and b_{k+1}' = K(b_n, b_k', d_{n-k+1}); computed in the
  // ambient power, so escaping B_n' is detected rather than assumed away.
  inline Tuple k_recursion(BnContext const& ctx) {
    std::size_t const n  = ctx.n();
    std::size_t const kp = ctx.op_index("K");
    auto const&       pw = ctx.power();
    Element           cur = ctx.encode(d_tuple(n, n));
    Element           bn  = ctx.encode(b_tuple(n, n));
    for (std::size_t k = 2; k < n; ++k) {
      Element dk = ctx.encode(d_tuple(n, n - k + 1));
      cur        = pw.apply(kp, std::array<Element, 3>{bn, cur, dk});
    }
    return ctx.decode(cur);
  }

  inline Report kprime_collapse(BnContext const& ctx, VerifyOptions const& opt) {
    Report r = detail::start("k-collapse", ctx);
    if (!ctx.at_algebra().with_k()) {
      throw std::invalid_argument("k-collapse needs the algebra with K");
    }
    std::size_t const n     = ctx.n();
    Tuple             prime = k_recursion(ctx);
    r.witnesses.push_back("b_n' = " + BnContext::name(prime));
    auto bprime = ctx.local(prime);
    if (!bprime) {
      r.fail("b_n' escapes B_n'");
      return r;
    }
    Tuple bn = b_tuple(n, n);
    for (std::size_t l = 1; l < n; ++l) {
      if (!at::barrable(prime[l]) || at::bar(prime[l]) != bn[l]) {
        r.fail("b_n(" + std::to_string(l + 1) + ") is not the bar of b_n'("
               + std::to_string(l + 1) + ")");
      }
    }
    auto bars = std::count_if(prime.begin(), prime.end(), detail::is_bD);
    r.set("bars_in_b_n_prime", bars);

    std::size_t     jp = ctx.op_index("J'");
    TranslationStep lambda{jp, 2, {ctx.b(n), *bprime}};
    Element         la = lambda.apply(ctx.algebra(), ctx.a());
    Element         l0 = lambda.apply(ctx.algebra(), ctx.zero());
    if (la != ctx.b(n)) {
      r.fail("lambda(a) = " + ctx.name_local(la));
    }
    if (l0 != ctx.c(n)) {
      r.fail("lambda(0) = " + ctx.name_local(l0));
    }

    std::size_t cap = default_cap(n, opt);
    auto g = pair_depth_graph(ctx.algebra(), ctx.a(), ctx.zero(), cap,
                              opt.budget);
    r.pairs  = g.entries().size();
    auto res = minimax_chain(g, ctx.size(), ctx.b(n), ctx.c(n));
    if (!res.depth) {
      r.fail("(b_n, c_n) not joined within the cap");
      return r;
    }
    r.set("depth", static_cast<std::int64_t>(*res.depth));
    if (*res.depth != 1) {
      r.fail("depth " + std::to_string(*res.depth) + ", expected 1");
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dispatch
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<std::string> const& lemma_names() {
    static std::vector<std::string> const names{
        "structure", "nonzero-ops", "atomic",  "chain",     "f-char",
        "omission",  "support-growth", "depth", "k-collapse"};
    return names;
  }

  // Builds what the lemma needs from the machine and runs it.  `plain` is
  // A(T), `with_k` is A'(T) (only used by k-collapse).  Budget exhaustion
  // gives a skipped report.
  inline Report run_lemma(std::string const&   lemma,
                          at::ATAlgebra const& plain,
                          at::ATAlgebra const& with_k,
                          std::size_t          n,
                          VerifyOptions const& opt) {
    auto names = lemma_names();
    if (std::find(names.begin(), names.end(), lemma) == names.end()) {
      throw std::invalid_argument("unknown lemma '" + lemma + "'");
    }
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
      if (lemma == "k-collapse") {
        BnContext ctx(with_k, n, std::nullopt, opt.budget);
        r = kprime_collapse(ctx, opt);
      } else {
        BnContext ctx(plain, n, std::nullopt, opt.budget);
        if (lemma == "structure") {
          r = verify_structure(ctx);
        } else if (lemma == "nonzero-ops") {
          r = verify_nonzero_ops(ctx, opt);
        } else if (lemma == "atomic") {
          r = verify_atomicity(ctx, opt);
        } else if (lemma == "chain") {
          r = explicit_chain_polynomial(ctx, opt);
        } else if (lemma == "f-char") {
          r = verify_f_characterization(ctx, opt);
        } else if (lemma == "omission") {
          r = verify_subalgebra_omission(ctx, opt);
        } else if (lemma == "support-growth") {
          r = verify_support_growth(ctx, opt);
        } else {
          r = bn_maltsev_depth(ctx, opt);
        }
      }
    } catch (BudgetExceeded const& e) {
      r        = Report{};
      r.lemma  = lemma;
      r.n      = n;
      r.status = Status::skipped;
      r.note   = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now()
                                              - t0)
                    .count();
    return r;
  }

}  // namespace varietal::bn

#endif  // VARIETAL_BN_VERIFY_HPP_
