// Acceptance gate: one line per criterion, PASS/FAIL with wall time.
// Returns a nonzero exit status when any criterion fails.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "msos/msos.hpp"

using namespace msos;

namespace {

const std::string kDataDir = MSOS_DATA_DIR;

Value env_of(std::initializer_list<std::pair<const std::string, Value>> kv) {
  return Value(ValueMap(kv));
}

LanguageDef skip_seq_def(std::vector<EntitySpec> entities) {
  LanguageDef def;
  def.name = "skip-seq";
  def.entities = std::move(entities);
  def.components = {{Sort::Cmd, {"skip", "seq"}}};
  return def;
}

std::vector<EntitySpec> rs_entities() {
  return {{"rho", EntityKind::ReadOnly, ObjectDomain::Map},
          {"sigma", EntityKind::ReadWrite, ObjectDomain::Map}};
}

std::vector<EntitySpec> all_entities() {
  return {{"rho", EntityKind::ReadOnly, ObjectDomain::Map},
          {"sigma", EntityKind::ReadWrite, ObjectDomain::Map},
          {"out", EntityKind::WriteOnly, ObjectDomain::List}};
}

// Transitions audited across criteria 4-7, per acceptance criterion 9.
AuditReport g_audit;
std::uint64_t g_compose_checks = 0;

void audit_trace(const Trace& tr) {
  for (const Transition& step : tr.steps) g_audit.check(step);
  for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i) {
    compose(tr.steps[i].label, tr.steps[i + 1].label);
    ++g_compose_checks;
  }
}

struct Runner {
  int failures = 0;

  template <typename Fn>
  void criterion(int n, const std::string& name, double budget_s, Fn&& fn) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = budget_s <= 0 || dt < budget_s;
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("%s  criterion %d: %s (%.2fs", pass ? "PASS" : "FAIL", n, name.c_str(), dt);
    if (budget_s > 0) std::printf(", budget %.0fs", budget_s);
    std::printf(")");
    if (!ok && !detail.empty()) std::printf("  [%s]", detail.c_str());
    if (ok && !in_budget) std::printf("  [over budget]");
    std::printf("\n");
    std::fflush(stdout);
  }
};

bool same_transitions(const std::vector<Transition>& a, const std::vector<Transition>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i]) || a[i].rule != b[i].rule) return false;
  return true;
}

}  // namespace

int main() {
  Runner r;

  // 1. Label category laws on seeded random labels over {rho, sigma, out}.
  r.criterion(1, "category and projection laws, 10000 seeded labels", 5.0,
              [](std::string& detail) {
                SignatureRef sig = make_signature(all_entities());
                CategoryLawReport rep = check_category_laws(sig, 10000, 42);
                if (!rep.passed()) detail = rep.failures[0].law + ": " + rep.failures[0].detail;
                return rep.passed();
              });

  // 2. Construct laws H_i and H_p, exhaustive at depth <= 3.
  r.criterion(2, "construct injection/projection laws at depth <= 3", 5.0,
              [](std::string& detail) {
                Language lang = load_language(kDataDir + "/full.toml");
                Enumerator en(lang);
                for (Sort s : {Sort::Cmd, Sort::Exp, Sort::Dcl, Sort::Pcd, Sort::Prm}) {
                  for (const Term& t : en.upto(s, 3)) {
                    const std::vector<Arg>* back = project(*t->construct, t);
                    if (!back || !(inject(*t->construct, *back) == t)) {
                      detail = "H_i failed on " + to_sexp(t);
                      return false;
                    }
                    for (const Construct* c : lang.constructs_of(s)) {
                      const std::vector<Arg>* got = project(*c, t);
                      if (got && !(inject(*c, *got) == t)) {
                        detail = "H_p failed on " + to_sexp(t) + " via " + c->id;
                        return false;
                      }
                      if (got && c != t->construct) {
                        detail = "projection overlap on " + to_sexp(t);
                        return false;
                      }
                    }
                  }
                }
                return true;
              });

  // 3. localize/globalize equations, extensional over terms and seed objects.
  r.criterion(3, "localize/globalize equations at depth <= 4", 30.0, [](std::string& detail) {
    Language lang = build_language(skip_seq_def(rs_entities()));
    Step S = global_step_of(lang);
    SeedGrid grid(lang.signature());
    Enumerator en(lang);
    for (const Term& t : en.upto(Sort::Cmd, 4)) {
      const Construct& c = *t->construct;
      Step restricted = globalize(localize(c, S));
      LocalStep direct = local_step_of(lang, *lang.component_for(&c));
      LocalStep back = localize(c, globalize(direct));
      RestrictedTerm rt{&c, t};
      for (const Objects& ctx : grid.contexts()) {
        std::vector<Transition> full = S(t, ctx);
        if (!same_transitions(restricted(t, ctx), full)) {
          detail = "globalize(localize) != S on " + to_sexp(t);
          return false;
        }
        if (!same_transitions(localize(c, S)(rt, ctx), full)) {
          detail = "localize != restricted S on " + to_sexp(t);
          return false;
        }
        if (!same_transitions(back(rt, ctx), direct(rt, ctx))) {
          detail = "localize(globalize(ls)) != ls on " + to_sexp(t);
          return false;
        }
        // Off-construct terms are outside the globalized relation.
        const Construct& other = *(t->construct == lang.constructs()[0]
                                       ? lang.constructs()[1]
                                       : lang.constructs()[0]);
        if (!globalize(localize(other, S))(t, ctx).empty()) {
          detail = "globalize not empty off-construct on " + to_sexp(t);
          return false;
        }
      }
    }
    return true;
  });

  // 4. skip-seq determinism at depth <= 6, modular and brute agreeing, plus
  //    the nd fixture caught by both modes with matching counterexamples.
  r.criterion(4, "skip-seq determinism at depth <= 6, both modes", 60.0,
              [](std::string& detail) {
                Language lang = load_language(kDataDir + "/skip-seq.toml");
                DeterminismReport rep = check_global_determinism(
                    lang, Sort::Cmd, 6, DetMode::Both,
                    [](const Transition& tr) { g_audit.check(tr); });
                if (!rep.deterministic()) {
                  detail = "unexpected counterexample on " +
                           to_sexp(rep.counterexamples[0].term);
                  return false;
                }
                if (rep.terms_checked != 458330) {
                  detail = "expected 458330 terms, saw " + std::to_string(rep.terms_checked);
                  return false;
                }

                Language nd = load_language(kDataDir + "/nondet.toml");
                DeterminismReport mod =
                    check_global_determinism(nd, Sort::Cmd, 3, DetMode::Modular);
                DeterminismReport bru =
                    check_global_determinism(nd, Sort::Cmd, 3, DetMode::Brute);
                if (mod.deterministic() || bru.deterministic()) {
                  detail = "nd fixture escaped detection";
                  return false;
                }
                if (mod.counterexamples.size() != bru.counterexamples.size()) {
                  detail = "modes disagree on the counterexample count";
                  return false;
                }
                for (std::size_t i = 0; i < mod.counterexamples.size(); ++i) {
                  const DetCounterexample& a = mod.counterexamples[i];
                  const DetCounterexample& b = bru.counterexamples[i];
                  if (!(a.term == b.term) || a.t1.rule != b.t1.rule || a.t2.rule != b.t2.rule) {
                    detail = "modes disagree on counterexample " + std::to_string(i);
                    return false;
                  }
                }
                return true;
              });

  // 5. Full-repository determinism at depth <= 4, both modes agreeing.
  r.criterion(5, "full 13-component determinism at depth <= 4, both modes", 300.0,
              [](std::string& detail) {
                Language lang = load_language(kDataDir + "/full.toml");
                if (lang.components().size() != 13) {
                  detail = "expected 13 components, saw " +
                           std::to_string(lang.components().size());
                  return false;
                }
                DeterminismReport rep = check_global_determinism(
                    lang, Sort::Cmd, 4, DetMode::Both,
                    [](const Transition& tr) { g_audit.check(tr); });
                if (!rep.deterministic()) {
                  detail = "counterexample on " + to_sexp(rep.counterexamples[0].term);
                  return false;
                }
                return true;
              });

  // 6. Golden trace for the worked one-step example, byte-exact JSONL.
  r.criterion(6, "golden one-step trace, byte-exact JSONL", 0, [](std::string& detail) {
    Language lang = load_language(kDataDir + "/skip-seq.toml");
    Term prog = parse_program(lang, "(seq (skip) (skip))");
    Objects init = lang.objects_from({{"rho", env_of({{"x", Value(1)}})}});
    Trace tr = run_trace(lang, prog, init);
    if (tr.steps.size() != 1 || !is_unobservable(tr.steps[0].label)) {
      detail = "expected exactly one unobservable transition";
      return false;
    }
    audit_trace(tr);
    std::ostringstream got;
    write_trace_jsonl(got, tr);
    std::ifstream golden(kDataDir + "/golden/eq4_trace.jsonl", std::ios::binary);
    std::ostringstream want;
    want << golden.rdbuf();
    if (got.str() != want.str()) {
      detail = "JSONL bytes differ from " + kDataDir + "/golden/eq4_trace.jsonl";
      return false;
    }
    return true;
  });

  // 7. The while/break desugaring: termination shape and exact step counts.
  r.criterion(7, "while/break desugaring runs", 0, [](std::string& detail) {
    Language lang = load_language(kDataDir + "/full.toml");
    Objects init = lang.objects_from({});

    Term loop_break = parse_program(lang, "(while (lit true) (break))");
    Trace tr = run_trace(lang, loop_break, init, 50);
    audit_trace(tr);
    if (tr.outcome != Outcome::Completed || tr.abrupt || !(tr.final_term == make_skip())) {
      detail = "while(true){break} did not complete at skip";
      return false;
    }
    Label composed = composed_label(tr);
    std::size_t sigma = lang.signature()->require("sigma");
    std::size_t out = lang.signature()->require("out");
    const auto& rw = std::get<RwArrow>(composed.arrows()[sigma]);
    if (!(rw.pre == rw.post) || !std::get<WoArrow>(composed.arrows()[out]).emitted.empty()) {
      detail = "composed label is not the identity on sigma/out";
      return false;
    }

    Term false_skip = parse_program(lang, "(while (lit false) (skip))");
    Trace ts = run_trace(lang, false_skip, init, 50);
    audit_trace(ts);
    if (ts.steps.size() != 3 || ts.outcome != Outcome::Completed) {
      detail = "while(false){skip} took " + std::to_string(ts.steps.size()) +
               " steps, expected exactly 3";
      return false;
    }
    return true;
  });

  // 8. Modularity: identical skip-seq verdicts under growing signatures.
  r.criterion(8, "skip-seq suite invariant under signature growth", 0, [](std::string& detail) {
    std::vector<std::vector<EntitySpec>> signatures = {
        {},
        {{"rho", EntityKind::ReadOnly, ObjectDomain::Map}},
        rs_entities(),
        all_entities(),
    };
    Term prog = make_seq(make_seq(make_skip(), make_skip()),
                         make_seq(make_skip(), make_seq(make_skip(), make_skip())));
    std::vector<std::string> reference_rules;
    for (std::size_t i = 0; i < signatures.size(); ++i) {
      Language lang = build_language(skip_seq_def(signatures[i]));
      DeterminismReport rep = check_global_determinism(lang, Sort::Cmd, 4, DetMode::Both);
      if (!rep.deterministic() || rep.terms_checked != 26) {
        detail = "determinism verdict changed under signature " + std::to_string(i);
        return false;
      }
      Trace tr = run_trace(lang, prog, lang.objects_from({}));
      if (tr.outcome != Outcome::Completed) {
        detail = "trace outcome changed under signature " + std::to_string(i);
        return false;
      }
      std::vector<std::string> rules;
      for (const Transition& step : tr.steps) rules.push_back(step.rule->qualified);
      if (i == 0) {
        reference_rules = rules;
      } else if (rules != reference_rules) {
        detail = "trace rules changed under signature " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  // 9. Label-discipline audit over every transition from criteria 4-7.
  r.criterion(9, "label-discipline audit over criteria 4-7", 0, [](std::string& detail) {
    if (g_audit.transitions == 0) {
      detail = "no transitions were audited";
      return false;
    }
    if (!g_audit.passed()) {
      detail = g_audit.violations[0];
      return false;
    }
    if (g_compose_checks == 0) {
      detail = "no consecutive labels were composed";
      return false;
    }
    return true;
  });

  std::printf("%s\n", r.failures == 0 ? "all criteria passed" : "ACCEPTANCE FAILED");
  return r.failures == 0 ? 0 : 1;
}
