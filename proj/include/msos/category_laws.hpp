#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "msos/error.hpp"
#include "msos/label.hpp"
#include "msos/seedgrid.hpp"
#include "msos/value.hpp"

namespace msos {

struct LawFailure {
  std::string law;
  std::string detail;
};

struct CategoryLawReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t checks = 0;
  std::vector<LawFailure> failures;

  bool passed() const { return failures.empty(); }
};

inline nlohmann::ordered_json law_report_to_json(const CategoryLawReport& r) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  o["samples"] = r.samples;
  o["seed"] = r.seed;
  o["checks"] = r.checks;
  nlohmann::ordered_json fs = nlohmann::ordered_json::array();
  for (const LawFailure& f : r.failures) {
    nlohmann::ordered_json fj = nlohmann::ordered_json::object();
    fj["law"] = f.law;
    fj["detail"] = f.detail;
    fs.push_back(std::move(fj));
  }
  o["failures"] = std::move(fs);
  return o;
}

namespace detail {

class LabelSampler {
public:
  LabelSampler(SignatureRef sig, std::uint64_t seed) : sig_(std::move(sig)), rng_(seed) {}

  Value random_map() {
    const auto& maps = seed_maps();
    return Value(maps[rng_() % maps.size()]);
  }

  std::vector<Value> random_emissions() {
    std::vector<Value> out;
    std::size_t n = rng_() % 3;
    for (std::size_t i = 0; i < n; ++i) out.push_back(Value(static_cast<int>(rng_() % 2)));
    return out;
  }

  Label random_label() {
    std::vector<EntityArrow> arrows;
    for (const EntitySpec& e : sig_->entities()) {
      switch (e.kind) {
        case EntityKind::ReadOnly: arrows.push_back(RoArrow{random_map()}); break;
        case EntityKind::ReadWrite: arrows.push_back(RwArrow{random_map(), random_map()}); break;
        case EntityKind::WriteOnly: arrows.push_back(WoArrow{random_emissions()}); break;
      }
    }
    return Label(sig_, std::move(arrows));
  }

  // A label composable after l: ro objects copied, rw pre = l's post.
  Label random_successor(const Label& l) {
    std::vector<EntityArrow> arrows;
    for (std::size_t i = 0; i < sig_->size(); ++i) {
      const EntityArrow& a = l.arrows()[i];
      if (const auto* ro = std::get_if<RoArrow>(&a))
        arrows.push_back(RoArrow{ro->object});
      else if (const auto* rw = std::get_if<RwArrow>(&a))
        arrows.push_back(RwArrow{rw->post, random_map()});
      else
        arrows.push_back(WoArrow{random_emissions()});
    }
    return Label(sig_, std::move(arrows));
  }

  std::vector<std::string> random_mentioned() {
    std::vector<std::string> names;
    for (const EntitySpec& e : sig_->entities())
      if (rng_() % 2) names.push_back(e.name);
    return names;
  }

private:
  SignatureRef sig_;
  std::mt19937_64 rng_;
};

}  // namespace detail

// Randomized exact-equality checks of the label category structure:
// associativity, left/right identity, the (P_M, P_U) isomorphism
// round-trip, and functoriality of both projections over composition.
inline CategoryLawReport check_category_laws(const SignatureRef& sig, std::uint64_t samples,
                                             std::uint64_t seed) {
  if (samples < 1) throw Error("check_category_laws: samples must be >= 1");
  CategoryLawReport rep;
  rep.samples = samples;
  rep.seed = seed;
  detail::LabelSampler gen(sig, seed);

  std::uint64_t i = 0;
  auto fail = [&rep, &i](const char* law, const Label&) {
    if (rep.failures.size() < 8)
      rep.failures.push_back({law, "sample " + std::to_string(i) + " of the seeded stream"});
  };

  for (i = 0; i < samples; ++i) {
    Label a = gen.random_label();
    Label b = gen.random_successor(a);
    Label c = gen.random_successor(b);

    ++rep.checks;
    if (!(compose(compose(a, b), c) == compose(a, compose(b, c)))) fail("associativity", a);

    Label id_src = identity_label(sig, source_objects(a));
    Label id_tgt = identity_label(sig, target_objects(a));
    ++rep.checks;
    if (!(compose(id_src, a) == a)) fail("left_identity", a);
    ++rep.checks;
    if (!(compose(a, id_tgt) == a)) fail("right_identity", a);

    std::vector<std::string> m = gen.random_mentioned();
    ++rep.checks;
    if (!(assemble(project_mentioned(a, m), project_unmentioned(a, m), sig) == a))
      fail("projection_isomorphism", a);

    ++rep.checks;
    if (!(project_mentioned(compose(a, b), m) ==
          compose(project_mentioned(a, m), project_mentioned(b, m))))
      fail("mentioned_functoriality", a);
    ++rep.checks;
    if (!(project_unmentioned(compose(a, b), m) ==
          compose(project_unmentioned(a, m), project_unmentioned(b, m))))
      fail("unmentioned_functoriality", a);

    ++rep.checks;
    if (!composable(a, b) || !composable(b, c)) fail("successor_composability", a);
  }
  return rep;
}

}  // namespace msos
