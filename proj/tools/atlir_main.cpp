// atlir: check ATL_ir formulas on explicit game structures.
//
//   atlir check --gen cardgame "<<player>> F win"
//   atlir check --model m.icgs.json --formula "<<a,b>> X p" --oracle --json
//   atlir gen castles:1,1,2 -o castles.icgs.json

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atlir/checker.hpp"
#include "atlir/generators.hpp"
#include "atlir/model_io.hpp"
#include "atlir/oracle.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;
constexpr int kExitDisagree = 3;

struct CheckArgs {
  std::string model_path;
  std::string gen_spec;
  std::vector<std::string> formulas;
  std::vector<std::string> positional;
  bool oracle = false;
  bool json = false;
  bool list_sat = false;
  bool all_states = false;
  std::uint64_t cap = atlir::kDefaultEnumerationCap;
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::string> state_names(const atlir::Icgs& model, const atlir::StateSet& states) {
  std::vector<std::string> out;
  for (atlir::StateId q : states) out.push_back(model.state_name(q));
  return out;
}

int run_check(const CheckArgs& args) {
  using namespace atlir;
  const auto start = std::chrono::steady_clock::now();

  std::optional<GeneratedModel> loaded;
  if (!args.gen_spec.empty()) {
    loaded = generate(args.gen_spec);
  } else {
    loaded = GeneratedModel{load_model_file(args.model_path), {}};
  }
  const Icgs& model = loaded->model;
  const double load_ms = ms_since(start);

  std::vector<std::string> texts = args.formulas;
  texts.insert(texts.end(), args.positional.begin(), args.positional.end());
  if (texts.empty()) throw Error(ErrorCode::SyntaxError, "no formula given");
  // Parse everything up front so a typo fails before any long check runs.
  std::vector<Formula> formulas;
  for (const auto& text : texts) formulas.push_back(parse(text, model, loaded->macros));

  const QueryScope scope = args.all_states ? QueryScope::AllStates : QueryScope::InitialStates;
  bool all_hold = true;
  bool disagreement = false;
  nlohmann::json results = nlohmann::json::array();
  nlohmann::json check_ms = nlohmann::json::array();

  for (std::size_t i = 0; i < formulas.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckResult result = check(model, formulas[i], scope);
    check_ms.push_back(ms_since(t0));
    all_hold = all_hold && result.holds;

    nlohmann::json row = {{"formula", texts[i]}, {"holds", result.holds}, {"sat_count", result.sat.size()}};
    if (args.list_sat) row["sat"] = state_names(model, result.sat);
    std::optional<bool> agrees;
    if (args.oracle) {
      const StateSet query = scope == QueryScope::AllStates ? model.all_states() : model.initial();
      agrees = (oracle_eval(model, result.formula, args.cap) & query) == result.sat;
      row["oracle_agrees"] = *agrees;
      disagreement = disagreement || !*agrees;
    }
    results.push_back(std::move(row));

    if (!args.json) {
      std::cout << (result.holds ? "holds  " : "fails  ") << texts[i] << "  (" << result.sat.size() << " of "
                << (scope == QueryScope::AllStates ? model.num_states() : model.initial().size())
                << (scope == QueryScope::AllStates ? " states" : " initial states") << " satisfy)";
      if (agrees) std::cout << (*agrees ? "  oracle: agrees" : "  oracle: DISAGREES");
      std::cout << "\n";
      if (args.list_sat) {
        for (const auto& name : state_names(model, result.sat)) std::cout << "    " << name << "\n";
      }
    }
  }

  if (args.json) {
    nlohmann::json report = {
        {"model",
         {{"states", model.num_states()}, {"initial", model.initial().size()}, {"agents", model.num_agents()}}},
        {"results", std::move(results)},
        {"timings", {{"load_ms", load_ms}, {"check_ms", std::move(check_ms)}, {"total_ms", ms_since(start)}}},
    };
    std::cout << report.dump(2) << "\n";
  }
  if (disagreement) return kExitDisagree;
  return all_hold ? kExitHolds : kExitFails;
}

int run_gen(const std::string& spec, const std::string& out) {
  const auto generated = atlir::generate(spec);
  if (out.empty() || out == "-") {
    std::cout << atlir::save_model(generated.model);
  } else {
    atlir::save_model_file(generated.model, out);
  }
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for ATL with imperfect information and memoryless strategies"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Check formulas against the initial states of a model");
  auto* model_opt = check->add_option("--model", check_args.model_path, "Model document (.icgs.json)");
  auto* gen_opt = check->add_option("--gen", check_args.gen_spec, "Built-in model: cardgame, cardgame-perfect, castles:n1,n2,n3");
  model_opt->excludes(gen_opt);
  gen_opt->excludes(model_opt);
  check->add_option("--formula,-f", check_args.formulas, "Formula to check (repeatable)");
  check->add_option("formulas", check_args.positional, "Formulas to check");
  check->add_flag("--oracle", check_args.oracle, "Compare with exhaustive strategy enumeration");
  check->add_flag("--json", check_args.json, "Machine-readable report on stdout");
  check->add_flag("--list-sat", check_args.list_sat, "List the satisfying states");
  check->add_flag("--all-states", check_args.all_states, "Compute the satisfying set over all states");
  check->add_option("--cap", check_args.cap, "Strategy enumeration cap for --oracle")->check(CLI::PositiveNumber);

  std::string gen_spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a built-in model as a document");
  gen->add_option("spec", gen_spec, "cardgame, cardgame-perfect or castles:n1,n2,n3")->required();
  gen->add_option("-o,--output", gen_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) {
      if (check_args.model_path.empty() && check_args.gen_spec.empty()) {
        std::cerr << "error: one of --model or --gen is required\n";
        return kExitError;
      }
      return run_check(check_args);
    }
    return run_gen(gen_spec, gen_out);
  } catch (const atlir::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& issue : e.issues()) {
      std::cerr << "  " << atlir::to_string(issue.kind) << ": " << issue.message << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
