#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msos/error.hpp"
#include "msos/label.hpp"
#include "msos/language.hpp"
#include "msos/repository.hpp"
#include "msos/term.hpp"

namespace msos {

enum class Outcome { Completed, Stuck, FuelExhausted };

inline std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::Stuck: return "stuck";
    case Outcome::FuelExhausted: return "fuel_exhausted";
  }
  return "?";
}

// A finite run: transitions with pairwise-composable labels. Completed
// covers normal termination (skip or a value) and abrupt termination
// (throwing(v), flagged abrupt).
struct Trace {
  SignatureRef signature;
  Objects init;
  std::vector<Transition> steps;
  Outcome outcome = Outcome::Completed;
  Term final_term;
  bool abrupt = false;
};

// Fold of compose over the trace; identity at the initial objects for the
// empty trace. Never throws on a Trace produced by run_trace.
inline Label composed_label(const Trace& tr) {
  if (tr.steps.empty()) return identity_label(tr.signature, tr.init);
  Label acc = tr.steps.front().label;
  for (std::size_t i = 1; i < tr.steps.size(); ++i) acc = compose(acc, tr.steps[i].label);
  return acc;
}

constexpr int kDefaultFuel = 10000;

// Deterministic driver: repeatedly takes the unique transition, threading
// objects through label targets (ro constant, rw advances to post). More
// than one transition is a hard error; this driver is for deterministic
// languages.
inline Trace run_trace(const Language& lang, const Term& t0, const Objects& init,
                       int fuel = kDefaultFuel) {
  const Builtins& b = builtins();
  Trace tr;
  tr.signature = lang.signature();
  tr.init = init;
  Term t = t0;
  Objects ctx = init;
  const Label* prev = nullptr;
  for (;;) {
    std::vector<Transition> ts = lang.global_step(t, ctx);
    if (ts.empty()) {
      tr.final_term = t;
      if (t->construct == b.skip || is_value(t)) {
        tr.outcome = Outcome::Completed;
      } else if (t->construct == b.throwing) {
        tr.outcome = Outcome::Completed;
        tr.abrupt = true;
      } else {
        tr.outcome = Outcome::Stuck;
      }
      return tr;
    }
    if (ts.size() > 1)
      throw NondeterminismError("nondeterministic step from " + to_sexp(t) + ": rules " +
                                ts[0].rule->qualified + " and " + ts[1].rule->qualified);
    Transition tsn = std::move(ts.front());
    if (prev && !composable(*prev, tsn.label))
      throw HarnessError("trace invariant violated: consecutive labels not composable at step " +
                         std::to_string(tr.steps.size() + 1));
    if (static_cast<int>(tr.steps.size()) >= fuel) {
      tr.final_term = t;
      tr.outcome = Outcome::FuelExhausted;
      return tr;
    }
    ctx = target_objects(tsn.label);
    t = tsn.target;
    tr.steps.push_back(std::move(tsn));
    prev = &tr.steps.back().label;
  }
}

}  // namespace msos
