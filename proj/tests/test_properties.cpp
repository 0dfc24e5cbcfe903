#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <utility>
#include <vector>

#include "msos/admissible.hpp"
#include "msos/category_laws.hpp"
#include "msos/determinism.hpp"
#include "msos/enumerate.hpp"
#include "msos/seedgrid.hpp"
#include "msos/trace.hpp"
#include "test_support.hpp"

using namespace msos;
using testsupport::ctx_of;
using testsupport::empty_ctx;
using testsupport::env;
using testsupport::full_lang;
using testsupport::nondet_lang;
using testsupport::skip_seq_lang;

namespace {

std::vector<std::pair<std::string, std::string>> cx_digest(const DeterminismReport& r) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const DetCounterexample& c : r.counterexamples)
    out.emplace_back(to_sexp(c.term),
                     c.t1.rule->qualified + "|" + c.t2.rule->qualified);
  return out;
}

}  // namespace

TEST_CASE("det_pair_check compares label and target") {
  const Language& lang = full_lang();
  const SignatureRef& sig = lang.signature();
  const Builtins& b = builtins();
  Objects ctx = ctx_of(lang, env({}), env({}));
  Term t = make_emit(make_lit(Value(1)));
  Label id = identity_label(sig, ctx);

  Transition same{t, id, b.seq_1, make_skip()};
  CHECK(det_pair_check(same, same));

  SECTION("write-only divergence fails the pair") {
    Label out1(sig, {RoArrow{env({})}, RwArrow{env({}), env({})}, WoArrow{{Value(1)}}});
    Label out2(sig, {RoArrow{env({})}, RwArrow{env({}), env({})}, WoArrow{{Value(2)}}});
    Transition a{t, out1, b.emit_val, make_skip()};
    Transition c{t, out2, b.emit_val, make_skip()};
    CHECK(!det_pair_check(a, c));
  }

  SECTION("different targets fail the pair") {
    Transition a{t, id, b.seq_1, make_skip()};
    Transition c{t, id, b.seq_1, make_seq(make_skip(), make_skip())};
    CHECK(!det_pair_check(a, c));
  }

  SECTION("comparing transitions from different configurations is a harness bug") {
    Objects other = ctx_of(lang, env({{"x", Value(1)}}), env({}));
    Transition a{t, id, b.seq_1, make_skip()};
    Transition c{t, identity_label(sig, other), b.seq_1, make_skip()};
    CHECK_THROWS_AS(det_pair_check(a, c), HarnessError);
    Transition d{make_skip(), id, b.seq_1, make_skip()};
    CHECK_THROWS_AS(det_pair_check(a, d), HarnessError);
  }
}

TEST_CASE("local determinism certificates") {
  const Builtins& b = builtins();

  SECTION("seq is locally deterministic in the minimal language") {
    DeterminismReport rep = check_local_determinism(skip_seq_lang(), *b.c_seq, 4);
    CHECK(rep.deterministic());
    CHECK(rep.mode == DetMode::Local);
    CHECK(rep.terms_checked == 25);  // the 26 commands up to depth 4, minus skip
  }

  SECTION("skip's certificate is vacuous") {
    DeterminismReport rep = check_local_determinism(skip_seq_lang(), *b.c_skip, 4);
    CHECK(rep.deterministic());
    CHECK(rep.terms_checked == 1);
  }

  SECTION("the nd fixture fails its own certificate") {
    DeterminismReport rep = check_local_determinism(nondet_lang(), *b.c_nd, 2);
    REQUIRE(rep.counterexamples.size() == 1);
    CHECK(to_sexp(rep.counterexamples[0].term) == "(nd)");
    CHECK(rep.counterexamples[0].t1.rule == b.nd_left);
    CHECK(rep.counterexamples[0].t2.rule == b.nd_right);
  }

  SECTION("the subterm hypothesis shields seq from nd subterms") {
    // seq's certificate only covers configurations whose proper subterms are
    // themselves deterministic; the four pure skip/seq terms remain.
    DeterminismReport rep = check_local_determinism(nondet_lang(), *b.c_seq, 3);
    CHECK(rep.deterministic());
    CHECK(rep.terms_checked == 4);

    Enumerator en(nondet_lang());
    std::size_t seq_terms = 0;
    for (const Term& t : en.upto(Sort::Cmd, 3))
      if (t->construct == b.seq) ++seq_terms;
    CHECK(seq_terms == 36);  // most were skipped, not silently passed
  }

  SECTION("certificates demand a registered component") {
    CHECK_THROWS_AS(check_local_determinism(skip_seq_lang(), *b.c_block, 3), Error);
  }
}

TEST_CASE("global determinism check") {
  SECTION("the minimal language is deterministic in every mode") {
    for (DetMode mode : {DetMode::Modular, DetMode::Brute, DetMode::Both}) {
      DeterminismReport rep = check_global_determinism(skip_seq_lang(), Sort::Cmd, 4, mode);
      CHECK(rep.deterministic());
      CHECK(rep.terms_checked == 26);
      CHECK(rep.mode == mode);
    }
  }

  SECTION("modular and brute modes find the same counterexamples") {
    DeterminismReport mod =
        check_global_determinism(nondet_lang(), Sort::Cmd, 3, DetMode::Modular);
    DeterminismReport bru = check_global_determinism(nondet_lang(), Sort::Cmd, 3, DetMode::Brute);
    CHECK(!mod.deterministic());
    CHECK(cx_digest(mod) == cx_digest(bru));
    // Both-mode cross-validates them elementwise and still reports the set.
    DeterminismReport both =
        check_global_determinism(nondet_lang(), Sort::Cmd, 3, DetMode::Both);
    CHECK(cx_digest(both) == cx_digest(bru));
  }

  SECTION("local mode is not a global check") {
    CHECK_THROWS_AS(check_global_determinism(skip_seq_lang(), Sort::Cmd, 2, DetMode::Local),
                    Error);
  }

  SECTION("mode names round-trip, local excluded from parsing") {
    CHECK(det_mode_from_name("modular") == DetMode::Modular);
    CHECK(det_mode_from_name("brute") == DetMode::Brute);
    CHECK(det_mode_from_name("both") == DetMode::Both);
    CHECK_THROWS_AS(det_mode_from_name("local"), Error);
    CHECK(det_mode_name(DetMode::Local) == "local");
  }

  SECTION("reports serialize with their counterexamples") {
    DeterminismReport rep = check_global_determinism(nondet_lang(), Sort::Cmd, 2, DetMode::Brute);
    json o = det_report_to_json(rep);
    CHECK(o["mode"] == "brute");
    CHECK(o["sort"] == "Cmd");
    CHECK(o["depth"] == 2);
    CHECK(o["terms_checked"] == rep.terms_checked);
    REQUIRE(!o["counterexamples"].empty());
    const json& cx = o["counterexamples"][0];
    CHECK(cx["term"] == "(nd)");
    CHECK(cx["t1"]["rule"] == "Cmd.nd/nd_left");
    CHECK(cx["t2"]["rule"] == "Cmd.nd/nd_right");
    CHECK(cx["t1"].contains("label"));
    CHECK(cx["t1"]["to"] == "(skip)");
  }
}

TEST_CASE("seed grids enumerate object assignments") {
  SECTION("grid sizes by signature") {
    CHECK(SeedGrid(make_signature({})).contexts().size() == 1);
    CHECK(SeedGrid(make_signature({{"rho", EntityKind::ReadOnly, ObjectDomain::Map}}))
              .contexts()
              .size() == 9);
    CHECK(SeedGrid(make_signature(testsupport::entities_rs())).contexts().size() == 81);
    // Write-only entities contribute a unit slot, not a factor.
    CHECK(SeedGrid(make_signature(testsupport::entities_all())).contexts().size() == 81);
  }

  SECTION("index_of inverts the enumeration") {
    SeedGrid grid(skip_seq_lang().signature());
    for (std::size_t i = 0; i < grid.contexts().size(); ++i)
      CHECK(grid.index_of(grid.contexts()[i]) == static_cast<int>(i));
    Objects off = ctx_of(skip_seq_lang(), env({{"z", Value(5)}}), env({}));
    CHECK(grid.index_of(off) == -1);
  }
}

TEST_CASE("admissibility harness") {
  SECTION("determinism is admissible on the minimal language") {
    const Language& lang = skip_seq_lang();
    Enumerator en(lang);
    AdmissibilityReport rep =
        check_admissibility(determinism_property(), lang, en.upto(Sort::Cmd, 3));
    CHECK(rep.passed());
    CHECK(rep.samples_checked == 5 * 81);
    CHECK(rep.property == "determinism");
  }

  SECTION("step counting is not admissible") {
    // Restricting seq's handle to the seq construct makes runs stop at the
    // first non-seq configuration, so "stops within 2 steps" holds under the
    // restricted handle yet fails under the full one for a looping body.
    LanguageDef def;
    def.name = "loopy";
    def.components = {{Sort::Cmd, {"skip", "seq", "cond", "cond_loop"}}};
    Language lang = build_language(def);

    PropertyCheck proxy{"stops within 2 steps",
                        [](const Step& S, const Term& t, const Objects& ctx) {
                          return steps_to_stop(S, t, ctx, 8) <= 2;
                        }};
    Term sample =
        make_seq(make_skip(), make_cond_loop(make_lit(Value(true)), make_skip()));
    AdmissibilityReport rep = check_admissibility(proxy, lang, {sample});
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].term == sample);
    CHECK(rep.samples_checked == 1);
  }

  SECTION("no samples means a trivial pass") {
    AdmissibilityReport rep =
        check_admissibility(determinism_property(), skip_seq_lang(), {});
    CHECK(rep.passed());
    CHECK(rep.samples_checked == 0);
  }
}

TEST_CASE("label category laws hold on seeded samples") {
  SECTION("the full three-entity signature") {
    SignatureRef sig = make_signature(testsupport::entities_all());
    CategoryLawReport rep = check_category_laws(sig, 10000, 42);
    CHECK(rep.passed());
    CHECK(rep.samples == 10000);
    CHECK(rep.checks > 0);
  }

  SECTION("a single write-only entity") {
    SignatureRef sig =
        make_signature({{"out", EntityKind::WriteOnly, ObjectDomain::List}});
    CHECK(check_category_laws(sig, 2000, 7).passed());
  }

  SECTION("reports serialize") {
    SignatureRef sig = make_signature(testsupport::entities_rs());
    json o = law_report_to_json(check_category_laws(sig, 100, 1));
    CHECK(o["samples"] == 100);
    CHECK(o["seed"] == 1);
    CHECK(o["checks"].get<std::uint64_t>() > 0);
    CHECK(o["failures"].empty());
  }

  SECTION("zero samples is a misuse") {
    SignatureRef sig = make_signature(testsupport::entities_rs());
    CHECK_THROWS_AS(check_category_laws(sig, 0, 42), Error);
  }
}

TEST_CASE("label discipline audit") {
  const Language& lang = full_lang();

  SECTION("every depth-3 transition respects its rule's audit class") {
    AuditReport audit;
    check_global_determinism(lang, Sort::Cmd, 3, DetMode::Both,
                             [&](const Transition& tr) { audit.check(tr); });
    CHECK(audit.passed());
    CHECK(audit.transitions > 0);
    CHECK(audit.unlabeled > 0);
    CHECK(audit.mentioned > 0);
    CHECK(audit.pass_through > 0);
  }

  SECTION("trace transitions audit clean, including block's rho override") {
    AuditReport audit;
    Objects ctx = ctx_of(lang, env({{"x", Value(1)}}), env({}));
    Term prog = make_seq(
        make_assign("x", make_block(make_env({{"x", Value(0)}}), make_boundid("x"))),
        make_emit(make_deref("x")));
    Trace tr = run_trace(lang, prog, ctx);
    REQUIRE(tr.outcome == Outcome::Completed);
    for (const Transition& step : tr.steps) audit.check(step);
    CHECK(audit.passed());
    CHECK(audit.transitions == tr.steps.size());
  }
}
