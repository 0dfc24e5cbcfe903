#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "msos/label.hpp"
#include "msos/term.hpp"
#include "msos/trace.hpp"
#include "msos/value.hpp"

namespace msos {

using json = nlohmann::ordered_json;

inline json value_to_json(const Value& v) {
  if (v.is_unit()) return nullptr;
  if (v.is_int()) return v.as_int();
  if (v.is_bool()) return v.as_bool();
  if (v.is_symbol()) return v.as_symbol();
  json o = json::object();
  for (const auto& [k, val] : v.as_map()) o[k] = value_to_json(val);
  return o;
}

// One key per entity, signature order: ro object, rw pre/post pair, wo
// emission list.
inline json label_to_json(const Label& l) {
  json o = json::object();
  const auto& ents = l.signature().entities();
  for (std::size_t i = 0; i < ents.size(); ++i) {
    const EntityArrow& a = l.arrows()[i];
    if (const auto* ro = std::get_if<RoArrow>(&a)) {
      o[ents[i].name] = value_to_json(ro->object);
    } else if (const auto* rw = std::get_if<RwArrow>(&a)) {
      json pair = json::object();
      pair["pre"] = value_to_json(rw->pre);
      pair["post"] = value_to_json(rw->post);
      o[ents[i].name] = std::move(pair);
    } else {
      const auto& wo = std::get<WoArrow>(a);
      json arr = json::array();
      for (const Value& v : wo.emitted) arr.push_back(value_to_json(v));
      o[ents[i].name] = std::move(arr);
    }
  }
  return o;
}

inline json transition_to_json(std::size_t step, const Transition& tr) {
  json o = json::object();
  o["step"] = step;
  o["rule"] = tr.rule->qualified;
  o["from"] = to_sexp(tr.source);
  o["to"] = to_sexp(tr.target);
  o["label"] = label_to_json(tr.label);
  return o;
}

inline json trace_summary_json(const Trace& tr) {
  json o = json::object();
  o["outcome"] = std::string(outcome_name(tr.outcome));
  o["term"] = to_sexp(tr.final_term);
  if (tr.abrupt) o["abrupt"] = true;
  o["composed_label"] = label_to_json(composed_label(tr));
  return o;
}

// JSON Lines: one object per transition, then the summary object.
inline void write_trace_jsonl(std::ostream& os, const Trace& tr) {
  for (std::size_t i = 0; i < tr.steps.size(); ++i)
    os << transition_to_json(i + 1, tr.steps[i]).dump() << '\n';
  os << trace_summary_json(tr).dump() << '\n';
}

}  // namespace msos
