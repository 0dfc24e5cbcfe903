#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "msos/determinism.hpp"
#include "msos/language.hpp"
#include "msos/seedgrid.hpp"
#include "msos/term.hpp"

namespace msos {

// A per-configuration property of a step handle. Admissible properties are
// those where holding under the construct-restricted handle implies holding
// under the full one; only such properties support per-component proof.
struct PropertyCheck {
  std::string name;
  std::function<bool(const Step&, const Term&, const Objects&)> predicate;
};

struct AdmissibilityViolation {
  Term term;
  Objects ctx;
};

struct AdmissibilityReport {
  std::string property;
  std::uint64_t samples_checked = 0;
  std::vector<AdmissibilityViolation> violations;

  bool passed() const { return violations.empty(); }
};

// For each sample term t (built by construct C) and each seed context:
// evaluate the property under globalize(localize(C, S)) and under S; a
// violation is a sample where the restricted handle satisfies the property
// but the full handle does not.
inline AdmissibilityReport check_admissibility(const PropertyCheck& prop, const Language& lang,
                                               const std::vector<Term>& samples) {
  AdmissibilityReport rep;
  rep.property = prop.name;
  Step S = global_step_of(lang);
  SeedGrid grid(lang.signature());
  for (const Term& t : samples) {
    Step restricted = globalize(localize(*t->construct, S));
    for (const Objects& ctx : grid.contexts()) {
      ++rep.samples_checked;
      if (prop.predicate(restricted, t, ctx) && !prop.predicate(S, t, ctx))
        rep.violations.push_back({t, ctx});
    }
  }
  return rep;
}

// Determinism as a property of one configuration: every pair of transitions
// the handle permits from (t, ctx) agrees on label and target. Admissible:
// it inspects the handle only at the configuration itself.
inline PropertyCheck determinism_property() {
  return {"determinism", [](const Step& S, const Term& t, const Objects& ctx) {
            std::vector<Transition> ts = S(t, ctx);
            std::pair<const Transition*, const Transition*> pair;
            return !detail::find_det_violation({ts.data(), ts.size()}, pair);
          }};
}

// Steps taken from t before the handle permits none, capped at limit+1.
// Properties built on this are generally NOT admissible: the restricted
// handle stops early at subterm boundaries.
inline int steps_to_stop(const Step& S, Term t, Objects ctx, int limit) {
  for (int n = 0; n <= limit; ++n) {
    std::vector<Transition> ts = S(t, ctx);
    if (ts.empty()) return n;
    ctx = target_objects(ts.front().label);
    t = ts.front().target;
  }
  return limit + 1;
}

}  // namespace msos
