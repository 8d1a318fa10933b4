// Command-line front end: equilibrium reports, deviation graphs, Markov
// chain analyses, stochastic-stability sweeps and seeded simulations for
// strategic and network formation games.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cbr/chain.hpp"
#include "cbr/io.hpp"

namespace {

using namespace cbr;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCap = 4;

struct Options {
  std::string input;
  std::string mode = "strict";
  std::string format = "report";
  std::string output;  // empty = stdout
  std::vector<std::string> eps_list;
  std::string eps = "1/100";
  std::uint64_t seed = 1;
  std::int64_t horizon = 100000;
  int start = 0;
};

ImprovementMode parse_mode(const std::string& mode) {
  if (mode == "strict") return ImprovementMode::kStrict;
  if (mode == "weak") return ImprovementMode::kWeak;
  throw ValidationError("mode must be 'strict' or 'weak'");
}

Rational parse_eps(const std::string& text) {
  // accept p/q, integers, and decimal literals like 1e-3 or 0.01
  if (auto r = parse_rational(text)) return *r;
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && value > 0 && value < 1) {
      // decimals in the CLI are powers-of-ten style; convert exactly
      Rational r(static_cast<long long>(std::llround(value * 1e12)),
                 1000000000000LL);
      return r;
    }
  } catch (...) {
  }
  throw ValidationError("cannot parse epsilon: " + text);
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw std::runtime_error("cannot write " + opt.output);
  out << text;
}

std::string set_label(const DeviationSystem& sys, const std::vector<int>& xs) {
  std::string out = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += sys.state_label(xs[i]);
  }
  return out + "}";
}

std::unique_ptr<DeviationSystem> make_system(const ParsedInput& input,
                                             ImprovementMode mode) {
  if (std::holds_alternative<Game>(input)) {
    return std::make_unique<GameSystem>(std::get<Game>(input), mode);
  }
  return std::make_unique<NetworkSystem>(std::get<NetworkGame>(input), mode);
}

void report_structure(std::ostream& out, const DeviationSystem& sys,
                      const RecurrentStructure& structure) {
  for (const auto& cls : structure.classes) {
    if (cls.is_equilibrium()) {
      out << "EQUILIBRIUM " << sys.state_label(cls.members[0]) << "\n";
    } else {
      out << "CLOSED_CYCLE (" << cls.members.size() << " states) "
          << set_label(sys, cls.members) << "\n";
    }
  }
  out << "TRANSIENT: " << structure.transient.size() << " states";
  if (!structure.transient.empty()) {
    out << " " << set_label(sys, structure.transient);
  }
  out << "\n";
}

ImprovementMode effective_mode(const Options& opt, const ParsedInput& input,
                               bool mode_explicit) {
  if (std::holds_alternative<NetworkGame>(input) && !mode_explicit) {
    return ImprovementMode::kWeak;
  }
  return parse_mode(opt.mode);
}

int cmd_equilibria(const Options& opt, bool mode_explicit) {
  const ParsedInput input = parse_game_file(opt.input);
  const ImprovementMode mode = effective_mode(opt, input, mode_explicit);
  std::ostringstream out;
  if (std::holds_alternative<Game>(input)) {
    const Game& game = std::get<Game>(input);
    GameSystem sys(game, mode);
    const auto equilibria = find_equilibria_scan(game, mode);
    out << (mode == ImprovementMode::kStrict ? "SNE" : "SSNE") << ": ";
    out << (equilibria.empty() ? "none" : set_label(sys, equilibria)) << "\n";
    report_structure(out, sys, recurrent_structure(
                                   build_deviation_graph(game, mode)));
    const auto check = equilibria_consistency_check(game, mode);
    out << "CONSISTENCY: " << (check.ok ? "pass" : "FAIL") << "\n";
  } else {
    const NetworkGame& game = std::get<NetworkGame>(input);
    NetworkSystem sys(game, mode);
    const auto stable = find_strongly_stable(game, mode);
    std::vector<int> states(stable.begin(), stable.end());
    out << "STRONGLY_STABLE: "
        << (states.empty() ? "none" : set_label(sys, states)) << "\n";
    report_structure(out, sys, network_recurrent_structure(game, mode));
  }
  write_output(opt, out.str());
  return 0;
}

int cmd_graph(const Options& opt, bool mode_explicit) {
  const ParsedInput input = parse_game_file(opt.input);
  const ImprovementMode mode = effective_mode(opt, input, mode_explicit);
  const auto sys = make_system(input, mode);
  const auto graph = build_deviation_graph(*sys, mode);
  if (opt.format == "dot") {
    write_output(opt, to_dot(graph, *sys));
    return 0;
  }
  std::ostringstream out;
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (const auto& e : graph.adjacency[v]) {
      out << sys->state_label(v) << " -> " << sys->state_label(e.to) << " [";
      for (size_t i = 0; i < e.coalitions.size(); ++i) {
        if (i) out << " ";
        out << coalition_label(e.coalitions[i]);
      }
      out << "]\n";
    }
  }
  write_output(opt, out.str());
  return 0;
}

int cmd_chain(const Options& opt) {
  const ParsedInput input = parse_game_file(opt.input);
  DynamicsConfig cfg;
  cfg.mode = parse_mode(opt.mode);
  const auto sys = make_system(input, cfg.mode);
  const Rational eps = opt.eps == "0" ? Rational(0) : parse_eps(opt.eps);
  const TransitionMatrix matrix = eps == 0
                                      ? build_unperturbed(*sys, cfg)
                                      : build_perturbed(*sys, cfg, eps);
  std::ostringstream out;
  if (opt.format == "csv") {
    out << "state";
    for (int j = 0; j < matrix.num_states; ++j) {
      out << "," << sys->state_label(j);
    }
    out << "\n";
    for (int i = 0; i < matrix.num_states; ++i) {
      out << sys->state_label(i);
      for (int j = 0; j < matrix.num_states; ++j) {
        out << "," << to_string(matrix.at(i, j));
      }
      out << "\n";
    }
  } else {
    out << "P matrix, epsilon = " << to_string(eps) << "\n";
    for (int i = 0; i < matrix.num_states; ++i) {
      out << sys->state_label(i) << ":";
      for (int j = 0; j < matrix.num_states; ++j) {
        if (matrix.at(i, j) != 0) {
          out << "  " << sys->state_label(j) << "=" << to_string(matrix.at(i, j));
        }
      }
      out << "\n";
    }
  }
  write_output(opt, out.str());
  return 0;
}

int cmd_stable(const Options& opt, bool network_only, bool mode_explicit) {
  const ParsedInput input = parse_game_file(opt.input);
  if (network_only && !std::holds_alternative<NetworkGame>(input)) {
    throw ValidationError("netform expects a network game file");
  }
  DynamicsConfig cfg;
  cfg.mode = effective_mode(opt, input, mode_explicit);
  const auto sys = make_system(input, cfg.mode);
  std::vector<Rational> sweep;
  for (const auto& e : opt.eps_list) sweep.push_back(parse_eps(e));
  const StableSetReport report = stochastically_stable_set(*sys, cfg, sweep);
  const ResistanceAnalysis resist = resistance_analysis(*sys, cfg);

  std::ostringstream out;
  if (opt.format == "csv") {
    out << "state";
    for (const auto& eps : report.epsilons) {
      out << ",eps=" << to_string(eps);
    }
    out << ",stable\n";
    for (int a = 0; a < sys->num_states(); ++a) {
      out << sys->state_label(a);
      for (const auto& dist : report.sweep) {
        out << "," << to_decimal_string(dist.probabilities[a]);
      }
      const bool stable = std::binary_search(report.structural_stable.begin(),
                                             report.structural_stable.end(), a);
      out << "," << (stable ? 1 : 0) << "\n";
    }
  } else {
    report_structure(out, *sys, report.structure);
    int cycles = 0, equilibria = 0;
    for (const auto& cls : report.structure.classes) {
      (cls.is_equilibrium() ? equilibria : cycles) += 1;
    }
    out << "STABLE SET: " << report.structural_stable.size() << " states ("
        << equilibria << " equilibria, " << cycles << " closed cycles) "
        << set_label(*sys, report.structural_stable) << "\n";
    out << "SWEEP AGREEMENT: " << (report.agree ? "pass" : "FAIL") << "\n";
    out << "J = " << report.structure.classes.size()
        << ", stochastic potentials:";
    for (int p : resist.stochastic_potential) out << " " << p;
    out << (resist.theory_consistent ? " (= J-1)" : " (THEORY MISMATCH)")
        << "\n";
    for (size_t k = 0; k < report.epsilons.size(); ++k) {
      out << "eps=" << to_string(report.epsilons[k]) << ":";
      for (int a = 0; a < sys->num_states(); ++a) {
        out << " " << sys->state_label(a) << "="
            << to_decimal_string(report.sweep[k].probabilities[a], 6);
      }
      out << "\n";
    }
  }
  write_output(opt, out.str());
  return 0;
}

int cmd_simulate(const Options& opt) {
  const ParsedInput input = parse_game_file(opt.input);
  DynamicsConfig cfg;
  cfg.mode = parse_mode(opt.mode);
  const auto sys = make_system(input, cfg.mode);
  const Rational eps = opt.eps == "0" ? Rational(0) : parse_eps(opt.eps);
  const bool keep = opt.format == "csv";
  const SimulationResult result =
      simulate(*sys, cfg, eps, opt.horizon, opt.seed, opt.start, keep);
  std::ostringstream out;
  if (opt.format == "csv") {
    out << "step,coalition,mutated,state\n";
    out << "0,,," << sys->state_label(result.start_state) << "\n";
    for (size_t t = 0; t < result.trajectory.size(); ++t) {
      const auto& step = result.trajectory[t];
      out << (t + 1) << "," << coalition_label(step.coalition) << ","
          << (step.mutated ? 1 : 0) << "," << sys->state_label(step.state)
          << "\n";
    }
  } else {
    out << "occupation frequencies after " << opt.horizon
        << " steps (seed " << opt.seed << ", eps " << to_string(eps) << "):\n";
    const std::int64_t total = opt.horizon + 1;
    for (int a = 0; a < sys->num_states(); ++a) {
      out << "  " << sys->state_label(a) << ": " << result.visits[a] << " ("
          << to_decimal_string(Rational(result.visits[a], total), 6) << ")\n";
    }
  }
  write_output(opt, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalitional better-response dynamics analyzer"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const auto& name :
       {"equilibria", "graph", "chain", "stable", "simulate", "netform"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", opt.input, "game or network file")->required();
    sub->add_option("--mode", opt.mode, "strict|weak");
    sub->add_option("--format", opt.format, "report|dot|csv");
    sub->add_option("-o,--output", opt.output, "output path (default stdout)");
    sub->add_option("--eps", opt.eps_list, "epsilon values (p/q or decimal)");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--horizon", opt.horizon, "simulation steps");
    sub->add_option("--start", opt.start, "start state index");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  if (!opt.eps_list.empty()) opt.eps = opt.eps_list.front();
  const bool mode_explicit =
      !app.get_subcommands().empty() &&
      app.get_subcommands().front()->count("--mode") > 0;

  try {
    if (command == "equilibria") return cmd_equilibria(opt, mode_explicit);
    if (command == "graph") return cmd_graph(opt, mode_explicit);
    if (command == "chain") return cmd_chain(opt);
    if (command == "stable") return cmd_stable(opt, false, mode_explicit);
    if (command == "netform") return cmd_stable(opt, true, mode_explicit);
    if (command == "simulate") return cmd_simulate(opt);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
