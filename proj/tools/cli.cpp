// Copyright 2026 The elx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Every command first builds an "elx-report/1" document; the text output is
// rendered from that document, so both formats always carry the same facts.

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "elx/eal.hpp"
#include "elx/realizability.hpp"
#include "elx/script.hpp"
#include "elx/stdlib.hpp"
#include "json.hpp"

namespace elx::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "elx-report/1";

struct Options {
  std::string report = "text";
  bool verbose = false;
  std::string file;
  std::vector<std::string> names;
  std::string name;
  std::string strategy = "normal-order";
  std::optional<std::uint64_t> fuel;
  std::vector<std::uint64_t> inputs;
  std::string ref;
  std::optional<std::uint64_t> max;
  std::string output;
};

struct UsageError {
  std::string message;
};

Json error_json(const Error& e) {
  Json j;
  j["code"] = std::string(error_code_name(e.code()));
  j["message"] = e.what();
  j["path"] = e.path();
  if (e.step() >= 0) j["step"] = e.step();
  return j;
}

Json profile_json(const CostProfile& p) {
  Json levels = Json::array();
  for (const LevelCost& l : p.levels) {
    levels.push_back({{"depth", l.depth},
                      {"steps", l.steps},
                      {"merges", l.merges},
                      {"size_at_start", l.size_at_start},
                      {"max_size", l.max_size}});
  }
  return {{"input_depth", p.input_depth},
          {"total_steps", p.total_steps},
          {"residual_steps", p.residual_steps},
          {"stratified", p.stratified},
          {"levels", levels}};
}

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("ELX_FUEL")) {
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError{"ELX_FUEL must be a positive integer"};
  }
  return kDefaultFuel;
}

ScriptFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

const ScriptProof& select(const ScriptFile& f, const std::string& name) {
  const ScriptProof* p = f.find_proof(name);
  if (!p) throw UsageError{"no proof named " + name};
  return *p;
}

CheckOptions check_options(const ScriptFile& f) {
  CheckOptions o;
  o.signature = f.effective_signature();
  o.equations = f.effective_equations();
  return o;
}

// Checks one proof and records the outcome in `j`; nullopt on failure.
std::optional<CheckedProof> check_into(const ScriptFile& f,
                                       const ScriptProof& p, Json& j) {
  j["name"] = p.name;
  j["statement"] = to_string(p.statement);
  try {
    CheckedProof c = check_proof(p.proof, check_options(f));
    j["conclusion"] = to_string(c.conclusion());
    if (!beta_equivalent(c.conclusion(), p.statement)) {
      j["status"] = "failed";
      j["error"] = {{"code", "ShapeMismatch"},
                    {"message", "the proof does not conclude its statement"},
                    {"path", Json::array()}};
      return std::nullopt;
    }
    j["status"] = "checked";
    return c;
  } catch (const Error& e) {
    j["status"] = "failed";
    j["error"] = error_json(e);
    return std::nullopt;
  }
}

Strategy strategy_of(const Options& o) {
  auto s = strategy_from_name(o.strategy);
  if (!s) throw UsageError{"unknown strategy " + o.strategy};
  return *s;
}

// ---------------------------------------------------------------------------
// Commands

Json cmd_check(const Options& o, const ScriptFile& f) {
  Json proofs = Json::array();
  bool ok = true;
  std::vector<std::string> names = o.names;
  if (names.empty()) {
    for (const ScriptProof& p : f.proofs) names.push_back(p.name);
  }
  for (const std::string& n : names) {
    Json j;
    auto c = check_into(f, select(f, n), j);
    if (c && o.verbose) j["term"] = to_string(c->term());
    ok = ok && c.has_value();
    proofs.push_back(j);
  }
  return {{"ok", ok}, {"proofs", proofs}};
}

Json cmd_extract(const Options& o, const ScriptFile& f) {
  Json j;
  auto c = check_into(f, select(f, o.names.at(0)), j);
  if (c) {
    j["term"] = to_string(erase(c->term()));
    if (o.verbose) j["kernel_term"] = to_string(c->term());
  }
  return {{"ok", c.has_value()}, {"proofs", Json::array({j})}};
}

Json cmd_eal(const Options& o, const ScriptFile& f) {
  Json j;
  auto c = check_into(f, select(f, o.names.at(0)), j);
  bool ok = c.has_value();
  if (c) {
    EalDerivation d = translate_to_eal(*c);
    j["eal_type"] = to_string(d.type);
    j["eal_nodes"] = eal_size(d);
    j["box_depth"] = to_box_term(*c).depth();
    try {
      check_eal(d);
      j["eal_check"] = "ok";
    } catch (const Error& e) {
      j["eal_check"] = "failed";
      j["error"] = error_json(e);
      ok = false;
    }
    if (o.verbose) j["term"] = to_string(d.term);
  }
  return {{"ok", ok}, {"proofs", Json::array({j})}};
}

Json cmd_run(const Options& o, const ScriptFile& f) {
  Json j;
  auto c = check_into(f, select(f, o.names.at(0)), j);
  if (!c) return {{"ok", false}, {"proofs", Json::array({j})}};
  ConformanceOptions opts;
  opts.strategy = strategy_of(o);
  opts.fuel = o.fuel.value_or(default_fuel());
  Json run = {{"strategy", strategy_name(opts.strategy)},
              {"fuel", opts.fuel},
              {"inputs", o.inputs}};
  bool ok = true;
  std::uint64_t steps = 0;
  CostProfile profile;
  try {
    std::uint64_t n = run_program(*c, o.inputs, opts, &steps, &profile);
    run["result"] = n;
    if (o.verbose) run["numeral"] = to_string(church_encode(n));
  } catch (const Error& e) {
    run["error"] = error_json(e);
    ok = false;
  }
  run["steps"] = steps;
  if (opts.strategy == Strategy::Stratified) run["profile"] = profile_json(profile);
  j["run"] = run;
  return {{"ok", ok}, {"proofs", Json::array({j})}};
}

Json cmd_conform(const Options& o, const ScriptFile& f) {
  Json j;
  auto c = check_into(f, select(f, o.names.at(0)), j);
  if (!c) return {{"ok", false}, {"proofs", Json::array({j})}};
  auto tot = stdlib::match_totality(c->conclusion());
  if (!tot) {
    throw UsageError{o.names[0] + " does not conclude a totality statement"};
  }
  ReferenceFunction ref;
  std::string ref_name = o.ref;
  if (ref_name.empty() || ref_name == "statement") {
    ref_name = "statement";
    Term result = tot->result;
    std::vector<std::string> vars = tot->vars;
    ref = [result, vars](const std::vector<std::uint64_t>& a) {
      std::map<std::string, std::uint64_t> env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = a[i];
      return evaluate_term(result, env);
    };
  } else {
    auto r = reference_function(ref_name);
    if (!r) throw UsageError{"unknown reference function " + ref_name};
    if (reference_arity(ref_name) != tot->vars.size()) {
      throw UsageError{"reference " + ref_name + " takes " +
                       std::to_string(reference_arity(ref_name)) +
                       " arguments, the proof takes " +
                       std::to_string(tot->vars.size())};
    }
    ref = *r;
  }
  ConformanceOptions opts;
  opts.strategy = strategy_of(o);
  opts.fuel = o.fuel.value_or(default_fuel());
  std::vector<DataTypeSpec> specs(tot->vars.size(), nat_data_type());
  ConformanceReport r = conformance_test(
      *c, specs, ref, default_grid(tot->vars.size(), o.max), opts);
  Json samples = Json::array();
  for (const SampleResult& s : r.samples) {
    Json js = {{"inputs", s.inputs},
               {"expected", s.expected},
               {"passed", s.passed},
               {"steps", s.steps}};
    if (s.actual) js["actual"] = *s.actual;
    if (!s.error.empty()) js["error"] = s.error;
    if (o.verbose && s.profile) js["profile"] = profile_json(*s.profile);
    samples.push_back(js);
  }
  j["conformance"] = {{"reference", ref_name},
                      {"strategy", strategy_name(opts.strategy)},
                      {"passed", r.passed},
                      {"failed", r.failed},
                      {"samples", samples}};
  return {{"ok", r.ok()}, {"proofs", Json::array({j})}};
}

// ---------------------------------------------------------------------------
// Text rendering

std::string inputs_text(const Json& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(a[i].get<std::uint64_t>());
  }
  return out;
}

void render_error(std::ostream& os, const Json& e) {
  os << "  " << e["code"].get<std::string>() << ": "
     << e["message"].get<std::string>();
  if (!e["path"].empty()) {
    os << " [at";
    for (const auto& p : e["path"]) os << " " << p.get<std::string>();
    os << "]";
  }
  os << "\n";
}

void render_profile(std::ostream& os, const Json& p) {
  for (const auto& l : p["levels"]) {
    os << "  depth " << l["depth"] << ": " << l["steps"] << " steps, "
       << l["merges"] << " merges, size " << l["size_at_start"] << " -> max "
       << l["max_size"] << "\n";
  }
  os << "  residual steps: " << p["residual_steps"] << "\n";
}

void render_text(std::ostream& os, const std::string& command,
                 const Json& report, bool verbose) {
  std::size_t good = 0;
  for (const auto& p : report["proofs"]) {
    std::string name = p["name"];
    if (p["status"] == "failed") {
      os << "FAILED " << name << "\n";
      render_error(os, p["error"]);
      continue;
    }
    if (command == "check") {
      os << "ok " << name << " : " << p["conclusion"].get<std::string>()
         << "\n";
      if (p.contains("term")) os << "  " << p["term"].get<std::string>() << "\n";
      ++good;
    } else if (command == "extract") {
      os << p["term"].get<std::string>() << "\n";
      if (p.contains("kernel_term")) {
        os << "  kernel: " << p["kernel_term"].get<std::string>() << "\n";
      }
    } else if (command == "eal") {
      os << name << " : " << p["eal_type"].get<std::string>() << "\n";
      os << "  " << p["eal_nodes"] << " nodes, box depth " << p["box_depth"]
         << ", check " << p["eal_check"].get<std::string>() << "\n";
      if (p.contains("error")) render_error(os, p["error"]);
      if (p.contains("term")) os << "  " << p["term"].get<std::string>() << "\n";
    } else if (command == "run") {
      const Json& r = p["run"];
      if (r.contains("result")) {
        os << r["result"] << "\n";
      } else {
        os << "no result\n";
        render_error(os, r["error"]);
      }
      if (verbose) {
        if (r.contains("numeral")) {
          os << "  numeral: " << r["numeral"].get<std::string>() << "\n";
        }
        os << "  " << r["steps"] << " steps ("
           << r["strategy"].get<std::string>() << ")\n";
        if (r.contains("profile")) render_profile(os, r["profile"]);
      }
    } else if (command == "conform") {
      const Json& c = p["conformance"];
      for (const auto& s : c["samples"]) {
        if (!verbose && s["passed"].get<bool>()) continue;
        os << (s["passed"].get<bool>() ? "ok   " : "FAIL ") << name << "("
           << inputs_text(s["inputs"]) << ") expected " << s["expected"];
        if (s.contains("actual")) os << ", got " << s["actual"];
        if (s.contains("error")) os << ", " << s["error"].get<std::string>();
        os << " (" << s["steps"] << " steps)\n";
      }
      os << name << ": " << c["passed"] << "/"
         << c["passed"].get<std::size_t>() + c["failed"].get<std::size_t>()
         << " samples agree with " << c["reference"].get<std::string>()
         << " (" << c["strategy"].get<std::string>() << ")\n";
    }
  }
  if (command == "check") {
    os << good << " of " << report["proofs"].size() << " proofs checked\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Check proof scripts and run the programs they contain", "elx"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--report", o.report, "Output format")
      ->check(CLI::IsMember({"text", "json", "json-like"}));
  app.add_flag("-v,--verbose", o.verbose, "Print terms and profiles");

  auto file_arg = [&](CLI::App* c) {
    c->add_option("file", o.file, "Proof script")->required();
  };
  auto fuel_opts = [&](CLI::App* c) {
    c->add_option("--strategy", o.strategy, "normal-order or stratified")
        ->check(CLI::IsMember({"normal-order", "stratified"}));
    c->add_option("--fuel", o.fuel, "Beta-step budget (default $ELX_FUEL or 10^7)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* check = app.add_subcommand("check", "Check every proof of a file");
  file_arg(check);
  check->add_option("names", o.names, "Only these proofs");

  CLI::App* extract = app.add_subcommand("extract", "Print the erased term");
  file_arg(extract);
  extract->add_option("name", o.name, "Proof")->required();

  CLI::App* eal = app.add_subcommand("eal", "Translate to EAL and check");
  file_arg(eal);
  eal->add_option("name", o.name, "Proof")->required();

  CLI::App* runc = app.add_subcommand("run", "Run a totality proof on numerals");
  file_arg(runc);
  runc->add_option("name", o.name, "Proof")->required();
  runc->add_option("inputs", o.inputs, "Arguments (after --)");
  fuel_opts(runc);

  CLI::App* conform =
      app.add_subcommand("conform", "Compare a program with a reference");
  file_arg(conform);
  conform->add_option("name", o.name, "Proof")->required();
  conform->add_option("--ref", o.ref,
                      "plus, mult, pred, minus, sum:F, prod:F, a library "
                      "function, or statement (default)");
  conform->add_option("--max", o.max, "Largest sampled argument");
  fuel_opts(conform);

  CLI::App* corpus = app.add_subcommand("corpus", "Print the standard library");
  corpus->add_option("-o,--output", o.output, "Write to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kOk : kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (!o.name.empty()) o.names = {o.name};
  bool json = o.report != "text";
  Json report = {{"schema", kSchema}, {"command", command}};
  try {
    if (command == "corpus") {
      ScriptFile f;
      for (const auto& np : stdlib::corpus()) {
        f.proofs.push_back({np.name, stdlib::conclusion_of(np.proof), np.proof});
      }
      std::string text =
          "# Standard library proofs. Regenerate with: elx corpus -o FILE\n\n" +
          print_script(f);
      if (o.output.empty()) {
        out << text;
      } else {
        std::ofstream file(o.output);
        if (!(file << text)) throw UsageError{"cannot write " + o.output};
      }
      return kOk;
    }
    report["file"] = o.file;
    ScriptFile f = load(o.file);
    Json body;
    if (command == "check") body = cmd_check(o, f);
    else if (command == "extract") body = cmd_extract(o, f);
    else if (command == "eal") body = cmd_eal(o, f);
    else if (command == "run") body = cmd_run(o, f);
    else body = cmd_conform(o, f);
    report.update(body);
  } catch (const UsageError& e) {
    err << "elx: " << e.message << "\n";
    return kUsage;
  } catch (const Error& e) {
    report["ok"] = false;
    report["error"] = error_json(e);
    if (json) {
      out << report.dump(2) << "\n";
    } else {
      err << "elx: " << e.describe() << "\n";
    }
    return kUsage;
  }

  if (json) {
    out << report.dump(2) << "\n";
  } else {
    std::ostringstream os;
    render_text(os, command, report, o.verbose);
    out << os.str();
  }
  return report["ok"].get<bool>() ? kOk : kFailed;
}

}  // namespace elx::cli
