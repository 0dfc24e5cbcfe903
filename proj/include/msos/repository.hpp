#pragma once

#include <deque>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msos/component.hpp"
#include "msos/term.hpp"

namespace msos {

// The built-in repository: every construct (component-owning and value
// forms) plus the shipped components. Addresses are stable for the process
// lifetime; terms and languages hold plain pointers into it.
class Repository {
public:
  const Construct* construct_by_id(std::string_view id) const {
    for (const Construct& c : constructs_)
      if (c.id == id) return &c;
    return nullptr;
  }
  const Construct* construct_by_name(std::string_view name) const {
    for (const Construct& c : constructs_)
      if (c.name == name) return &c;
    return nullptr;
  }
  const ComponentDef* component_for(const Construct* c) const {
    for (const ComponentDef& d : components_)
      if (d.construct == c) return &d;
    return nullptr;
  }
  const std::deque<Construct>& constructs() const { return constructs_; }
  const std::deque<ComponentDef>& components() const { return components_; }

  // The shipped repository listing: fixtures excluded.
  std::vector<const ComponentDef*> shipped() const {
    std::vector<const ComponentDef*> out;
    for (const ComponentDef& d : components_)
      if (!d.fixture) out.push_back(&d);
    return out;
  }

private:
  std::deque<Construct> constructs_;
  std::deque<ComponentDef> components_;

  Construct& add_construct(std::string name, Sort sort, std::vector<ArgSort> args,
                           Construct::ValueRule vr = Construct::ValueRule::Never) {
    Construct c;
    c.id = std::string(sort_name(sort)) + "." + name;
    c.name = std::move(name);
    c.sort = sort;
    c.arg_sorts = std::move(args);
    c.value_rule = vr;
    c.index = static_cast<std::uint32_t>(constructs_.size());
    constructs_.push_back(std::move(c));
    return constructs_.back();
  }

  ComponentDef& add_component(const Construct& c, std::vector<EntitySpec> mentioned,
                              std::vector<const Construct*> imports,
                              std::vector<std::pair<std::string, std::pair<RuleKind, AuditClass>>> rules,
                              StepFn step, bool fixture = false) {
    ComponentDef d;
    d.construct = &c;
    d.mentioned = std::move(mentioned);
    d.imports = std::move(imports);
    for (auto& [name, ka] : rules) {
      RuleInfo r;
      r.name = name;
      r.qualified = c.id + "/" + name;
      r.kind = ka.first;
      r.audit = ka.second;
      d.rules.push_back(std::move(r));
    }
    d.step = step;
    d.fixture = fixture;
    components_.push_back(std::move(d));
    ComponentDef& ref = components_.back();
    for (RuleInfo& r : ref.rules) r.component = &ref;
    return ref;
  }

  friend struct Builtins;
};

// Pointer handles to every built-in construct, component, and rule.
struct Builtins {
  Repository repo;

  const Construct *skip, *seq, *cond, *cond_loop, *throw_, *throwing, *catch_, *assign, *emit;
  const Construct *lit, *boundid, *deref, *block;
  const Construct *bind, *env;
  const Construct *eq, *abs;
  const Construct *nd;

  const ComponentDef *c_skip, *c_seq, *c_cond, *c_cond_loop, *c_throw, *c_throwing, *c_catch,
      *c_assign, *c_emit, *c_boundid, *c_deref, *c_block, *c_bind, *c_nd;

  const RuleInfo *seq_1, *seq_2, *seq_3;
  const RuleInfo *cond_arg, *cond_true, *cond_false;
  const RuleInfo *cl_unfold;
  const RuleInfo *throw_arg, *throw_val;
  const RuleInfo *catch_step, *catch_skip, *catch_handle, *catch_rethrow, *catch_prm;
  const RuleInfo *assign_arg, *assign_val;
  const RuleInfo *emit_arg, *emit_val;
  const RuleInfo *boundid_read;
  const RuleInfo *deref_read;
  const RuleInfo *block_1, *block_2, *block_3;
  const RuleInfo *bind_arg, *bind_val;
  const RuleInfo *nd_left, *nd_right;

  Builtins();
};

const Builtins& builtins();

inline const Repository& builtin_repository() { return builtins().repo; }

// Term builders over the built-in constructs.
inline Term make_skip() { return inject(*builtins().skip, {}); }
inline Term make_seq(Term a, Term b) { return inject(*builtins().seq, {std::move(a), std::move(b)}); }
inline Term make_cond(Term e, Term t, Term f) {
  return inject(*builtins().cond, {std::move(e), std::move(t), std::move(f)});
}
inline Term make_cond_loop(Term e, Term c) {
  return inject(*builtins().cond_loop, {std::move(e), std::move(c)});
}
inline Term make_throw(Term e) { return inject(*builtins().throw_, {std::move(e)}); }
inline Term make_throwing(Value v) { return inject(*builtins().throwing, {std::move(v)}); }
inline Term make_catch(Term c, Term h) {
  return inject(*builtins().catch_, {std::move(c), std::move(h)});
}
inline Term make_assign(std::string x, Term e) {
  return inject(*builtins().assign, {std::move(x), std::move(e)});
}
inline Term make_emit(Term e) { return inject(*builtins().emit, {std::move(e)}); }
inline Term make_lit(Value v) { return inject(*builtins().lit, {std::move(v)}); }
inline Term make_boundid(std::string x) { return inject(*builtins().boundid, {std::move(x)}); }
inline Term make_deref(std::string x) { return inject(*builtins().deref, {std::move(x)}); }
inline Term make_block(Term d, Term e) {
  return inject(*builtins().block, {std::move(d), std::move(e)});
}
inline Term make_bind(std::string x, Term e) {
  return inject(*builtins().bind, {std::move(x), std::move(e)});
}
inline Term make_env(ValueMap m) { return inject(*builtins().env, {Value(std::move(m))}); }
inline Term make_eq(Term e) { return inject(*builtins().eq, {std::move(e)}); }
inline Term make_abs(Term prm, Term c) {
  return inject(*builtins().abs, {std::move(prm), std::move(c)});
}
inline Term make_nd() { return inject(*builtins().nd, {}); }

// The surface-language desugarings: while loops become a caught conditional
// loop that a break unwinds by throwing the distinguished symbol.
inline Term desugar_while_break(Term e, Term c) {
  return make_catch(make_cond_loop(std::move(e), std::move(c)),
                    make_abs(make_eq(make_lit(Value("breaking"))), make_skip()));
}
inline Term desugar_break() { return make_throw(make_lit(Value("breaking"))); }

namespace rules {

inline void step_skip(const RestrictedTerm&, LocalContext&) {}

inline void step_seq(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& c1 = child(rt.term, 0);
  const Term& c2 = child(rt.term, 1);
  if (c1->construct == b.skip) {
    cx.axiom(*b.seq_1, c2);
    return;
  }
  if (c1->construct == b.throwing) {
    cx.axiom(*b.seq_3, c1);
    return;
  }
  for (Premise p : cx.step_same(c1)) cx.pass_through(*b.seq_2, p, make_seq(p.target(), c2));
}

inline void step_cond(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& e = child(rt.term, 0);
  const Term& t = child(rt.term, 1);
  const Term& f = child(rt.term, 2);
  if (!is_value(e)) {
    for (Premise p : cx.step_same(e)) cx.pass_through(*b.cond_arg, p, make_cond(p.target(), t, f));
    return;
  }
  if (e->construct == b.lit) {
    const Value& v = value_arg(e, 0);
    if (v.is_bool()) {
      if (v.as_bool()) cx.axiom(*b.cond_true, t);
      else cx.axiom(*b.cond_false, f);
    }
    // non-boolean guard value: stuck
  }
}

inline void step_cond_loop(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& e = child(rt.term, 0);
  const Term& c = child(rt.term, 1);
  cx.axiom(*b.cl_unfold, make_cond(e, make_seq(c, rt.term), make_skip()));
}

inline void step_throw(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& e = child(rt.term, 0);
  if (!is_value(e)) {
    for (Premise p : cx.step_same(e)) cx.pass_through(*b.throw_arg, p, make_throw(p.target()));
    return;
  }
  if (e->construct == b.lit) cx.axiom(*b.throw_val, make_throwing(value_arg(e, 0)));
}

inline void step_throwing(const RestrictedTerm&, LocalContext&) {}

inline void step_catch(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& c = child(rt.term, 0);
  const Term& h = child(rt.term, 1);
  if (c->construct == b.skip) {
    cx.axiom(*b.catch_skip, make_skip());
    return;
  }
  if (c->construct == b.throwing) {
    // Handler must have the shape abs(eq(e), body); anything else is stuck.
    if (h->construct != b.abs) return;
    const Term& prm = child(h, 0);
    const Term& body = child(h, 1);
    if (prm->construct != b.eq) return;
    const Term& pe = child(prm, 0);
    if (!is_value(pe)) {
      for (Premise p : cx.step_same(pe))
        cx.pass_through(*b.catch_prm, p, make_catch(c, make_abs(make_eq(p.target()), body)));
      return;
    }
    if (pe->construct == b.lit) {
      const Value& v = value_arg(c, 0);
      const Value& w = value_arg(pe, 0);
      if (v == w) cx.axiom(*b.catch_handle, body);
      else cx.axiom(*b.catch_rethrow, c);
    }
    return;
  }
  for (Premise p : cx.step_same(c)) cx.pass_through(*b.catch_step, p, make_catch(p.target(), h));
}

inline void step_assign(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const std::string& x = ident_arg(rt.term, 0);
  const Term& e = child(rt.term, 1);
  if (!is_value(e)) {
    for (Premise p : cx.step_same(e)) cx.pass_through(*b.assign_arg, p, make_assign(x, p.target()));
    return;
  }
  if (e->construct == b.lit) {
    const Value& pre = cx.mentioned_object("sigma");
    ValueMap post = pre.as_map();
    post[x] = value_arg(e, 0);
    cx.axiom_mentioned(*b.assign_val, MentionedLabel::rw("sigma", pre, Value(std::move(post))),
                       make_skip());
  }
}

inline void step_emit(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& e = child(rt.term, 0);
  if (!is_value(e)) {
    for (Premise p : cx.step_same(e)) cx.pass_through(*b.emit_arg, p, make_emit(p.target()));
    return;
  }
  if (e->construct == b.lit)
    cx.axiom_mentioned(*b.emit_val, MentionedLabel::wo("out", {value_arg(e, 0)}), make_skip());
}

inline void step_boundid(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const std::string& x = ident_arg(rt.term, 0);
  const Value& rho = cx.mentioned_object("rho");
  auto it = rho.as_map().find(x);
  if (it == rho.as_map().end()) return;  // unbound name: stuck
  cx.axiom_mentioned(*b.boundid_read, MentionedLabel::ro("rho", rho), make_lit(it->second));
}

inline void step_deref(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const std::string& x = ident_arg(rt.term, 0);
  const Value& sigma = cx.mentioned_object("sigma");
  auto it = sigma.as_map().find(x);
  if (it == sigma.as_map().end()) return;  // unbound location: stuck
  cx.axiom_mentioned(*b.deref_read, MentionedLabel::rw("sigma", sigma, sigma),
                     make_lit(it->second));
}

inline void step_block(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const Term& d = child(rt.term, 0);
  const Term& e = child(rt.term, 1);
  if (!is_value(d)) {
    for (Premise p : cx.step_same(d)) cx.pass_through(*b.block_1, p, make_block(p.target(), e));
    return;
  }
  if (is_value(e)) {
    cx.axiom(*b.block_3, e);
    return;
  }
  if (d->construct == b.env) {
    const Value& rho0 = cx.mentioned_object("rho");
    const Value& rho1 = value_arg(d, 0);
    Value inner(update(rho0.as_map(), rho1.as_map()));
    for (Premise p : cx.step_override(e, "rho", inner))
      cx.premise_mentioned(*b.block_2, p, MentionedLabel::ro("rho", rho0),
                           make_block(d, p.target()));
  }
}

inline void step_bind(const RestrictedTerm& rt, LocalContext& cx) {
  const Builtins& b = builtins();
  const std::string& x = ident_arg(rt.term, 0);
  const Term& e = child(rt.term, 1);
  if (!is_value(e)) {
    for (Premise p : cx.step_same(e)) cx.pass_through(*b.bind_arg, p, make_bind(x, p.target()));
    return;
  }
  if (e->construct == b.lit) cx.axiom(*b.bind_val, make_env(ValueMap{{x, value_arg(e, 0)}}));
}

// Deliberately nondeterministic fixture: two always-enabled axioms with
// different targets.
inline void step_nd(const RestrictedTerm&, LocalContext& cx) {
  const Builtins& b = builtins();
  cx.axiom(*b.nd_left, make_skip());
  cx.axiom(*b.nd_right, make_seq(make_skip(), make_skip()));
}

}  // namespace rules

inline Builtins::Builtins() {
  using AS = ArgSort;
  using VR = Construct::ValueRule;
  using K = RuleKind;
  using A = AuditClass;

  const EntitySpec RO_RHO{"rho", EntityKind::ReadOnly, ObjectDomain::Map};
  const EntitySpec RW_SIGMA{"sigma", EntityKind::ReadWrite, ObjectDomain::Map};
  const EntitySpec WO_OUT{"out", EntityKind::WriteOnly, ObjectDomain::List};

  skip = &repo.add_construct("skip", Sort::Cmd, {});
  seq = &repo.add_construct("seq", Sort::Cmd, {AS::child(Sort::Cmd), AS::child(Sort::Cmd)});
  cond = &repo.add_construct(
      "cond", Sort::Cmd, {AS::child(Sort::Exp), AS::child(Sort::Cmd), AS::child(Sort::Cmd)});
  cond_loop =
      &repo.add_construct("cond_loop", Sort::Cmd, {AS::child(Sort::Exp), AS::child(Sort::Cmd)});
  throw_ = &repo.add_construct("throw", Sort::Cmd, {AS::child(Sort::Exp)});
  throwing = &repo.add_construct("throwing", Sort::Cmd, {AS::value_lit()});
  catch_ = &repo.add_construct("catch", Sort::Cmd, {AS::child(Sort::Cmd), AS::child(Sort::Pcd)});
  assign = &repo.add_construct("assign", Sort::Cmd, {AS::ident_lit(), AS::child(Sort::Exp)});
  emit = &repo.add_construct("emit", Sort::Cmd, {AS::child(Sort::Exp)});

  lit = &repo.add_construct("lit", Sort::Exp, {AS::value_lit()}, VR::Always);
  boundid = &repo.add_construct("boundid", Sort::Exp, {AS::ident_lit()});
  deref = &repo.add_construct("deref", Sort::Exp, {AS::ident_lit()});
  block = &repo.add_construct("block", Sort::Exp, {AS::child(Sort::Dcl), AS::child(Sort::Exp)});

  bind = &repo.add_construct("bind", Sort::Dcl, {AS::ident_lit(), AS::child(Sort::Exp)});
  env = &repo.add_construct("env", Sort::Dcl, {AS::env_lit()}, VR::Always);

  eq = &repo.add_construct("eq", Sort::Prm, {AS::child(Sort::Exp)}, VR::WhenArg0IsValue);
  abs = &repo.add_construct("abs", Sort::Pcd, {AS::child(Sort::Prm), AS::child(Sort::Cmd)},
                            VR::WhenArg0IsValue);

  nd = &repo.add_construct("nd", Sort::Cmd, {});

  c_skip = &repo.add_component(*skip, {}, {}, {}, rules::step_skip);
  // seq_3 matches throwing but stays inert in languages without it, so
  // throwing is not an import; the minimal skip-seq language must build.
  c_seq = &repo.add_component(*seq, {}, {skip},
                              {{"seq_1", {K::Axiom, A::Unlabeled}},
                               {"seq_2", {K::OnePremise, A::PassThrough}},
                               {"seq_3", {K::Axiom, A::Unlabeled}}},
                              rules::step_seq);
  c_cond = &repo.add_component(*cond, {}, {lit},
                               {{"cond_arg", {K::OnePremise, A::PassThrough}},
                                {"cond_true", {K::Axiom, A::Unlabeled}},
                                {"cond_false", {K::Axiom, A::Unlabeled}}},
                               rules::step_cond);
  c_cond_loop = &repo.add_component(*cond_loop, {}, {cond, seq, skip},
                                    {{"unfold", {K::Axiom, A::Unlabeled}}},
                                    rules::step_cond_loop);
  c_throw = &repo.add_component(*throw_, {}, {lit, throwing},
                                {{"throw_arg", {K::OnePremise, A::PassThrough}},
                                 {"throw_val", {K::Axiom, A::Unlabeled}}},
                                rules::step_throw);
  c_throwing = &repo.add_component(*throwing, {}, {}, {}, rules::step_throwing);
  c_catch = &repo.add_component(*catch_, {}, {skip, throwing, abs, eq, lit},
                                {{"catch_step", {K::OnePremise, A::PassThrough}},
                                 {"catch_skip", {K::Axiom, A::Unlabeled}},
                                 {"catch_handle", {K::Axiom, A::Unlabeled}},
                                 {"catch_rethrow", {K::Axiom, A::Unlabeled}},
                                 {"catch_prm", {K::OnePremise, A::PassThrough}}},
                                rules::step_catch);
  c_assign = &repo.add_component(*assign, {RW_SIGMA}, {lit, skip},
                                 {{"assign_arg", {K::OnePremise, A::PassThrough}},
                                  {"assign_val", {K::Axiom, A::Mentioned}}},
                                 rules::step_assign);
  c_emit = &repo.add_component(*emit, {WO_OUT}, {lit, skip},
                               {{"emit_arg", {K::OnePremise, A::PassThrough}},
                                {"emit_val", {K::Axiom, A::Mentioned}}},
                               rules::step_emit);
  c_boundid = &repo.add_component(*boundid, {RO_RHO}, {lit},
                                  {{"boundid_read", {K::Axiom, A::Mentioned}}},
                                  rules::step_boundid);
  c_deref = &repo.add_component(*deref, {RW_SIGMA}, {lit},
                                {{"deref_read", {K::Axiom, A::Mentioned}}}, rules::step_deref);
  c_block = &repo.add_component(*block, {RO_RHO}, {env},
                                {{"block_1", {K::OnePremise, A::PassThrough}},
                                 {"block_2", {K::OnePremise, A::PassThrough}},
                                 {"block_3", {K::Axiom, A::Unlabeled}}},
                                rules::step_block);
  c_bind = &repo.add_component(*bind, {}, {lit, env},
                               {{"bind_arg", {K::OnePremise, A::PassThrough}},
                                {"bind_val", {K::Axiom, A::Unlabeled}}},
                               rules::step_bind);
  c_nd = &repo.add_component(*nd, {}, {skip, seq},
                             {{"nd_left", {K::Axiom, A::Unlabeled}},
                              {"nd_right", {K::Axiom, A::Unlabeled}}},
                             rules::step_nd, /*fixture=*/true);

  seq_1 = &c_seq->rule("seq_1");
  seq_2 = &c_seq->rule("seq_2");
  seq_3 = &c_seq->rule("seq_3");
  cond_arg = &c_cond->rule("cond_arg");
  cond_true = &c_cond->rule("cond_true");
  cond_false = &c_cond->rule("cond_false");
  cl_unfold = &c_cond_loop->rule("unfold");
  throw_arg = &c_throw->rule("throw_arg");
  throw_val = &c_throw->rule("throw_val");
  catch_step = &c_catch->rule("catch_step");
  catch_skip = &c_catch->rule("catch_skip");
  catch_handle = &c_catch->rule("catch_handle");
  catch_rethrow = &c_catch->rule("catch_rethrow");
  catch_prm = &c_catch->rule("catch_prm");
  assign_arg = &c_assign->rule("assign_arg");
  assign_val = &c_assign->rule("assign_val");
  emit_arg = &c_emit->rule("emit_arg");
  emit_val = &c_emit->rule("emit_val");
  boundid_read = &c_boundid->rule("boundid_read");
  deref_read = &c_deref->rule("deref_read");
  block_1 = &c_block->rule("block_1");
  block_2 = &c_block->rule("block_2");
  block_3 = &c_block->rule("block_3");
  bind_arg = &c_bind->rule("bind_arg");
  bind_val = &c_bind->rule("bind_val");
  nd_left = &c_nd->rule("nd_left");
  nd_right = &c_nd->rule("nd_right");
}

inline const Builtins& builtins() {
  static const Builtins b;
  return b;
}

}  // namespace msos
