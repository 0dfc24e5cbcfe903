#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "msos/enumerate.hpp"
#include "msos/program.hpp"
#include "msos/repository.hpp"
#include "msos/sexpr.hpp"
#include "msos/term.hpp"
#include "test_support.hpp"

using namespace msos;
using testsupport::full_lang;
using testsupport::skip_seq_lang;

namespace {

std::vector<std::string> sexps(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back(to_sexp(t));
  return out;
}

}  // namespace

TEST_CASE("construct identity and injection") {
  const Builtins& b = builtins();

  SECTION("ids are <Sort>.<name>") {
    CHECK(b.seq->id == "Cmd.seq");
    CHECK(b.skip->id == "Cmd.skip");
    CHECK(b.lit->id == "Exp.lit");
    CHECK(b.bind->id == "Dcl.bind");
    CHECK(b.abs->id == "Pcd.abs");
    CHECK(b.eq->id == "Prm.eq");
  }

  SECTION("inject builds well-sorted nodes") {
    Term t = make_seq(make_skip(), make_skip());
    REQUIRE(t->construct == b.seq);
    CHECK(child(t, 0) == make_skip());
    CHECK(to_sexp(t) == "(seq (skip) (skip))");
  }

  SECTION("arity and sort violations are construction errors") {
    CHECK_THROWS_AS(inject(*b.seq, {Arg(make_skip())}), ConstructionError);
    CHECK_THROWS_AS(inject(*b.seq, {Arg(make_skip()), Arg(make_lit(Value(1)))}),
                    ConstructionError);
    CHECK_THROWS_AS(inject(*b.lit, {Arg(make_skip())}), ConstructionError);
    CHECK_THROWS_AS(inject(*b.boundid, {Arg(Value(1))}), ConstructionError);
  }

  SECTION("heights count literal leaves as 1") {
    CHECK(make_skip()->height == 1);
    CHECK(make_lit(Value(0))->height == 2);
    CHECK(make_boundid("x")->height == 2);
    CHECK(make_env({})->height == 2);
    CHECK(make_seq(make_skip(), make_skip())->height == 2);
    CHECK(make_seq(make_seq(make_skip(), make_skip()), make_skip())->height == 3);
    CHECK(make_emit(make_lit(Value(1)))->height == 3);
  }
}

TEST_CASE("projection laws") {
  const Builtins& b = builtins();
  Term s1 = make_skip();
  Term t = make_seq(s1, make_skip());

  SECTION("project yields the argument tuple of matching constructs") {
    const std::vector<Arg>* args = project(*b.seq, t);
    REQUIRE(args != nullptr);
    REQUIRE(args->size() == 2);
    CHECK(std::get<Term>((*args)[0]) == s1);
    CHECK(project(*b.seq, s1) == nullptr);
    CHECK(project(*b.skip, t) == nullptr);
  }

  SECTION("restrict_term mirrors project") {
    auto rt = restrict_term(*b.seq, t);
    REQUIRE(rt.has_value());
    CHECK(rt->construct == b.seq);
    CHECK(rt->term == t);
    CHECK(!restrict_term(*b.skip, t).has_value());
  }

  SECTION("H_i and H_p hold exhaustively at depth <= 3") {
    const Language& lang = full_lang();
    Enumerator en(lang);
    for (Sort s : {Sort::Cmd, Sort::Exp, Sort::Dcl, Sort::Pcd, Sort::Prm}) {
      for (const Term& u : en.upto(s, 3)) {
        // H_i: project after inject returns the same tuple.
        Term again = inject(*u->construct, u->args);
        const std::vector<Arg>* back = project(*u->construct, again);
        REQUIRE(back != nullptr);
        CHECK(*back == u->args);
        // H_p: a successful projection reassembles to the same term.
        for (const Construct* c : lang.constructs_of(s)) {
          const std::vector<Arg>* got = project(*c, u);
          if (got) CHECK(inject(*c, *got) == u);
        }
      }
    }
  }

  SECTION("constructs of a sort project disjointly and cover") {
    const Language& lang = full_lang();
    Enumerator en(lang);
    for (Sort s : {Sort::Cmd, Sort::Exp, Sort::Dcl}) {
      for (const Term& u : en.upto(s, 3)) {
        int hits = 0;
        for (const Construct* c : lang.constructs_of(s))
          if (project(*c, u)) ++hits;
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("value forms") {
  CHECK(is_value(make_lit(Value(2))));
  CHECK(is_value(make_env({{"x", Value(1)}})));
  CHECK(is_value(make_eq(make_lit(Value(2)))));
  CHECK(is_value(make_abs(make_eq(make_lit(Value(0))), make_skip())));

  CHECK(!is_value(make_seq(make_skip(), make_skip())));
  CHECK(!is_value(make_skip()));
  CHECK(!is_value(make_throwing(Value(1))));
  CHECK(!is_value(make_eq(make_deref("x"))));
  CHECK(!is_value(make_abs(make_eq(make_deref("x")), make_skip())));
  CHECK(!is_value(make_bind("x", make_lit(Value(1)))));
}

TEST_CASE("term enumeration") {
  const Language& lang = skip_seq_lang();

  SECTION("hand-checked lists at small depth") {
    CHECK(sexps(enumerate_terms(lang, Sort::Cmd, 0)).empty());
    CHECK(sexps(enumerate_terms(lang, Sort::Cmd, 1)) == std::vector<std::string>{"(skip)"});
    CHECK(sexps(enumerate_terms(lang, Sort::Cmd, 2)) ==
          std::vector<std::string>{"(skip)", "(seq (skip) (skip))"});
    CHECK(enumerate_terms(lang, Sort::Cmd, 3).size() == 5);
    CHECK(enumerate_terms(lang, Sort::Cmd, 4).size() == 26);
    CHECK(enumerate_terms(lang, Sort::Cmd, 5).size() == 677);
  }

  SECTION("duplicate-free and deterministic") {
    std::vector<std::string> a = sexps(enumerate_terms(lang, Sort::Cmd, 4));
    std::vector<std::string> b = sexps(enumerate_terms(lang, Sort::Cmd, 4));
    CHECK(a == b);
    std::set<std::string> uniq(a.begin(), a.end());
    CHECK(uniq.size() == a.size());
  }

  SECTION("complete versus a naive grammar unfolding at depth 3") {
    // Naive oracle: all skip/seq trees of height <= 3, by direct recursion.
    std::vector<std::vector<Term>> by_height{{}, {make_skip()}};
    for (int h = 2; h <= 3; ++h) {
      std::vector<Term> lower;
      for (int k = 1; k < h; ++k)
        lower.insert(lower.end(), by_height[k].begin(), by_height[k].end());
      std::vector<Term> level;
      for (const Term& a : lower)
        for (const Term& c : lower)
          if (std::max(a->height, c->height) == static_cast<std::uint32_t>(h - 1))
            level.push_back(make_seq(a, c));
      by_height.push_back(std::move(level));
    }
    std::set<std::string> expect;
    for (const auto& lvl : by_height)
      for (const Term& t : lvl) expect.insert(to_sexp(t));
    std::vector<std::string> got = sexps(enumerate_terms(lang, Sort::Cmd, 3));
    CHECK(std::set<std::string>(got.begin(), got.end()) == expect);
  }

  SECTION("streaming visit matches materialized lists") {
    Enumerator en(lang);
    std::vector<std::string> streamed;
    en.visit(Sort::Cmd, 4, [&](const Term& t) { streamed.push_back(to_sexp(t)); });
    CHECK(streamed == sexps(enumerate_terms(lang, Sort::Cmd, 4)));
  }

  SECTION("literal seeds feed literal positions") {
    const Language& full = full_lang();
    std::vector<std::string> exps = sexps(enumerate_terms(full, Sort::Exp, 2));
    CHECK(std::find(exps.begin(), exps.end(), "(lit 0)") != exps.end());
    CHECK(std::find(exps.begin(), exps.end(), "(lit true)") != exps.end());
    CHECK(std::find(exps.begin(), exps.end(), "(lit breaking)") != exps.end());
    CHECK(std::find(exps.begin(), exps.end(), "(boundid x)") != exps.end());
    std::vector<std::string> dcls = sexps(enumerate_terms(full, Sort::Dcl, 2));
    CHECK(std::find(dcls.begin(), dcls.end(), "(env ((x 0)))") != dcls.end());
  }
}

TEST_CASE("s-expression syntax") {
  const Language& lang = full_lang();

  SECTION("parse and print round-trip") {
    for (const char* text : {
             "(seq (skip) (throw (lit breaking)))",
             "(catch (throw (lit 1)) (abs (eq (lit 1)) (skip)))",
             "(seq (assign x (lit 0)) (emit (deref x)))",
             "(cond (lit true) (skip) (seq (skip) (skip)))",
         }) {
      Term t = parse_program(lang, text);
      CHECK(to_sexp(t) == text);
    }
    const char* exp_text = "(block (env ((x 0))) (boundid x))";
    CHECK(to_sexp(parse_program(lang, exp_text, Sort::Exp)) == exp_text);
  }

  SECTION("literal atoms parse as ints, booleans, and symbols") {
    Term t = parse_program(lang, "(emit (lit -7))");
    CHECK(value_arg(child(t, 0), 0) == Value(-7));
    t = parse_program(lang, "(emit (lit false))");
    CHECK(value_arg(child(t, 0), 0) == Value(false));
    t = parse_program(lang, "(emit (lit stop))");
    CHECK(value_arg(child(t, 0), 0) == Value("stop"));
  }

  SECTION("while and break desugar") {
    Term t = parse_program(lang, "(while (lit true) (break))");
    CHECK(t == desugar_while_break(make_lit(Value(true)), desugar_break()));
    CHECK(to_sexp(desugar_break()) == "(throw (lit breaking))");
    CHECK(to_sexp(t) ==
          "(catch (cond_loop (lit true) (throw (lit breaking))) "
          "(abs (eq (lit breaking)) (skip)))");
  }

  SECTION("parse errors carry line and column") {
    auto fails = [&](const char* text, const char* needle, Sort sort = Sort::Cmd) {
      try {
        parse_program(lang, text, sort);
        FAIL("expected a parse error for: " << text);
      } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
      }
    };
    fails("(seq (skip)", "unclosed");
    fails("(seq (skip) (skip)) extra", "trailing");
    fails("(frobnicate)", "unknown construct");
    fails("(seq skip (skip))", "expected (construct");
    fails("(seq (skip))", "takes 2 arguments");
    fails("(seq (skip) (lit 1))", "expected Cmd term");
    fails("(boundid (skip))", "expected an identifier", Sort::Exp);
    fails("(while (lit true))", "while takes");
    fails("()", "construct name");
  }

  SECTION("error positions point at the offending token") {
    try {
      parse_program(lang, "(seq (skip)\n  (oops))");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("2:4") != std::string::npos);
    }
  }

  SECTION("sugar requires its constructs to be in the language") {
    CHECK_THROWS_AS(parse_program(skip_seq_lang(), "(while (lit true) (skip))"), ParseError);
    CHECK_THROWS_AS(parse_program(skip_seq_lang(), "(break)"), ParseError);
  }
}
