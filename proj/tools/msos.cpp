// Command-line front end: load a language definition, parse a program, run
// or trace it, and invoke the property harness. Exit codes: 0 completed,
// 1 parse/build error, 2 stuck, 3 fuel exhausted, 4 nondeterminism,
// 5 property counterexamples.
#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "msos/msos.hpp"

namespace {

using namespace msos;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStuck = 2;
constexpr int kExitFuel = 3;
constexpr int kExitNondet = 4;
constexpr int kExitCounterexample = 5;

bool use_color(std::FILE* stream) {
  const char* flag = std::getenv("MSOS_COLOR");
  if (flag && std::string_view(flag) == "0") return false;
  return isatty(fileno(stream)) != 0;
}

std::string paint(const std::string& text, const char* code, std::FILE* stream) {
  if (!use_color(stream)) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

// Entity names render with their conventional Greek letters where one
// exists; machine formats always use the ASCII name.
std::string display_entity(const std::string& name) {
  if (name == "rho") return "ρ (rho)";
  if (name == "sigma") return "σ (sigma)";
  return name;
}

// --env/--store values use the literal grammar: integer, true/false, or a
// bare symbol.
Value parse_literal(const std::string& text) {
  if (text == "true") return Value(true);
  if (text == "false") return Value(false);
  std::int64_t n = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec == std::errc() && p == text.data() + text.size()) return Value(n);
  return Value(text);
}

ValueMap parse_bindings(const std::vector<std::string>& pairs, const char* flag) {
  ValueMap m;
  for (const std::string& kv : pairs) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(std::string(flag) + " expects k=v, got '" + kv + "'");
    m[kv.substr(0, eq)] = parse_literal(kv.substr(eq + 1));
  }
  return m;
}

Objects initial_objects(const Language& lang, const ValueMap& env_map,
                        const ValueMap& store_map) {
  std::vector<std::pair<std::string, Value>> named;
  const LabelSignature& sig = *lang.signature();
  if (!env_map.empty()) {
    if (sig.find("rho") == LabelSignature::npos)
      throw Error("--env given, but the language has no rho entity");
    named.emplace_back("rho", Value(env_map));
  }
  if (!store_map.empty()) {
    if (sig.find("sigma") == LabelSignature::npos)
      throw Error("--store given, but the language has no sigma entity");
    named.emplace_back("sigma", Value(store_map));
  }
  return lang.objects_from(named);
}

int exit_code_for(const Trace& tr) {
  switch (tr.outcome) {
    case Outcome::Completed: return kExitOk;
    case Outcome::Stuck: return kExitStuck;
    case Outcome::FuelExhausted: return kExitFuel;
  }
  return kExitError;
}

struct RunArgs {
  std::string lang_file;
  std::string program_file;
  std::vector<std::string> env_pairs;
  std::vector<std::string> store_pairs;
  int fuel = kDefaultFuel;
  std::string out_file;
};

// Traces own their terms, labels, and signature, so they may outlive the
// language they were produced by.
Trace run_program(const RunArgs& a) {
  Language lang = load_language(a.lang_file);
  Term prog = parse_program(lang, read_text_file(a.program_file));
  Objects init = initial_objects(lang, parse_bindings(a.env_pairs, "--env"),
                                 parse_bindings(a.store_pairs, "--store"));
  return run_trace(lang, prog, init, a.fuel);
}

int cmd_run(const RunArgs& a) {
  Trace tr = run_program(a);
  std::string line = std::string(outcome_name(tr.outcome)) + (tr.abrupt ? " (abrupt)" : "") +
                     ": " + to_sexp(tr.final_term);
  const char* code = tr.outcome == Outcome::Completed ? "32" : "33";
  std::cout << paint(line, code, stdout) << "\n";
  std::cout << "composed label: " << label_to_json(composed_label(tr)).dump() << "\n";
  return exit_code_for(tr);
}

int cmd_trace(const RunArgs& a) {
  Trace tr = run_program(a);
  if (a.out_file.empty()) {
    write_trace_jsonl(std::cout, tr);
  } else {
    std::ofstream out(a.out_file, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + a.out_file);
    write_trace_jsonl(out, tr);
  }
  std::cerr << outcome_name(tr.outcome) << " after " << tr.steps.size() << " step"
            << (tr.steps.size() == 1 ? "" : "s") << "\n";
  return exit_code_for(tr);
}

int cmd_check_det(const std::string& lang_file, const std::string& sort_name_arg,
                  std::uint32_t depth, const std::string& mode_name) {
  Language lang = load_language(lang_file);
  std::optional<Sort> sort = sort_from_name(sort_name_arg);
  if (!sort) throw Error("unknown sort: " + sort_name_arg);
  DeterminismReport rep =
      check_global_determinism(lang, *sort, depth, det_mode_from_name(mode_name));
  std::cout << det_report_to_json(rep).dump(2) << "\n";
  return rep.deterministic() ? kExitOk : kExitCounterexample;
}

int cmd_check_laws(const std::string& lang_file, std::uint64_t samples, std::uint64_t seed) {
  SignatureRef sig;
  if (lang_file.empty()) {
    sig = make_signature({{"rho", EntityKind::ReadOnly, ObjectDomain::Map},
                          {"sigma", EntityKind::ReadWrite, ObjectDomain::Map},
                          {"out", EntityKind::WriteOnly, ObjectDomain::List}});
  } else {
    sig = make_signature(load_language_def(lang_file).entities);
  }
  CategoryLawReport rep = check_category_laws(sig, samples, seed);
  std::cout << law_report_to_json(rep).dump(2) << "\n";
  return rep.passed() ? kExitOk : kExitCounterexample;
}

int cmd_components() {
  const Builtins& b = builtins();
  std::vector<const ComponentDef*> shipped = b.repo.shipped();
  for (const ComponentDef* comp : shipped) {
    const Construct& c = *comp->construct;
    std::cout << c.id << " sort: " << sort_name(c.sort) << " args:";
    if (c.arg_sorts.empty()) std::cout << " (none)";
    for (const ArgSort& as : c.arg_sorts) {
      switch (as.kind) {
        case ArgSort::Kind::Child: std::cout << " " << sort_name(as.sort); break;
        case ArgSort::Kind::ValueLit: std::cout << " value"; break;
        case ArgSort::Kind::IdentLit: std::cout << " ident"; break;
        case ArgSort::Kind::EnvLit: std::cout << " env"; break;
      }
    }
    std::cout << "\n" << c.id << " mentioned:";
    if (comp->mentioned.empty()) std::cout << " (none)";
    for (const EntitySpec& e : comp->mentioned) std::cout << " " << display_entity(e.name);
    std::cout << "\n" << c.id << " imports:";
    if (comp->imports.empty()) std::cout << " (none)";
    for (const Construct* imp : comp->imports) std::cout << " " << imp->id;
    std::cout << "\n" << c.id << " rules:";
    if (comp->rules.empty()) std::cout << " (none)";
    for (const RuleInfo& r : comp->rules) std::cout << " " << r.name;
    std::cout << "\n";
  }
  std::cout << shipped.size() << " components\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular structural operational semantics engine"};
  app.require_subcommand(1);

  RunArgs run_args;
  RunArgs trace_args;

  auto add_run_options = [](CLI::App* cmd, RunArgs& a) {
    cmd->add_option("lang", a.lang_file, "language definition (TOML)")->required();
    cmd->add_option("program", a.program_file, "program file (s-expression)")->required();
    cmd->add_option("--env", a.env_pairs, "initial rho binding k=v (repeatable)");
    cmd->add_option("--store", a.store_pairs, "initial sigma binding k=v (repeatable)");
    cmd->add_option("--fuel", a.fuel, "maximum number of steps")->check(CLI::PositiveNumber);
  };

  CLI::App* run_cmd =
      app.add_subcommand("run", "run a program and print outcome and composed label");
  add_run_options(run_cmd, run_args);

  CLI::App* trace_cmd = app.add_subcommand("trace", "run a program and write a JSONL trace");
  add_run_options(trace_cmd, trace_args);
  trace_cmd->add_option("--out", trace_args.out_file, "trace output path (default stdout)");

  CLI::App* check_cmd = app.add_subcommand("check", "property harness");
  check_cmd->require_subcommand(1);

  std::string det_lang, det_sort = "Cmd", det_mode = "both";
  std::uint32_t det_depth = 4;
  CLI::App* det_cmd = check_cmd->add_subcommand(
      "det", "exhaustive determinism check over enumerated terms and seed objects");
  det_cmd->add_option("lang", det_lang, "language definition (TOML)")->required();
  det_cmd->add_option("--sort", det_sort, "term sort to enumerate");
  det_cmd->add_option("--depth", det_depth, "maximum term depth")->check(CLI::PositiveNumber);
  det_cmd->add_option("--mode", det_mode, "modular | brute | both");

  std::string laws_lang;
  std::uint64_t laws_samples = 10000, laws_seed = 42;
  CLI::App* laws_cmd =
      check_cmd->add_subcommand("laws", "label category and projection law check");
  laws_cmd->add_option("lang", laws_lang, "optional language definition for its signature");
  laws_cmd->add_option("--samples", laws_samples, "random labels to draw");
  laws_cmd->add_option("--seed", laws_seed, "RNG seed");

  CLI::App* components_cmd =
      app.add_subcommand("components", "list the built-in component repository");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (trace_cmd->parsed()) return cmd_trace(trace_args);
    if (det_cmd->parsed()) return cmd_check_det(det_lang, det_sort, det_depth, det_mode);
    if (laws_cmd->parsed()) return cmd_check_laws(laws_lang, laws_samples, laws_seed);
    if (components_cmd->parsed()) return cmd_components();
  } catch (const NondeterminismError& e) {
    std::cerr << paint("nondeterministic", "31", stderr) << ": " << e.what() << "\n";
    return kExitNondet;
  } catch (const std::exception& e) {
    std::cerr << paint("error", "31", stderr) << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
