// Command-line frontend: solve / oracle / verify / gen / avoid / search over
// the line-oriented instance format.
//
// Exit codes: 0 success, 1 negative verdict, 2 input error,
// 3 hypothesis violation, 4 internal invariant error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gallai/avoidance.hpp"
#include "gallai/coloring.hpp"
#include "gallai/errors.hpp"
#include "gallai/graph.hpp"
#include "gallai/instance_io.hpp"
#include "gallai/instances.hpp"
#include "gallai/oracle.hpp"
#include "gallai/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kHypothesisViolation = 3;
constexpr int kInternalError = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gallai::parse_error(1, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gallai::ProblemInput load_problem(const std::string& path) {
  return gallai::to_problem(gallai::parse_instance(read_file(path)));
}

int run_solve(const std::string& input, const std::string& mode_flag) {
  auto pi = load_problem(input);
  std::optional<gallai::SolveMode> mode;
  if (mode_flag == "d3")
    mode = gallai::SolveMode::kDistance3;
  else if (mode_flag == "d4")
    mode = gallai::SolveMode::kDistance4;
  else if (pi.mode_hint)
    mode = pi.mode_hint;

  gallai::PartialColoring total;
  if (mode) {
    total = (*mode == gallai::SolveMode::kDistance3)
                ? gallai::solve_distance3(pi.graph, pi.restricted, pi.lists)
                : gallai::solve_distance4(pi.graph, pi.restricted, pi.lists);
  } else {
    // auto: the distance-3 route has the weaker distance requirement.
    auto d3 = gallai::validate_hypotheses(pi.graph, pi.restricted, pi.lists,
                                          gallai::SolveMode::kDistance3);
    if (d3.ok()) {
      total = gallai::solve_distance3(pi.graph, pi.restricted, pi.lists);
    } else {
      auto d4 = gallai::validate_hypotheses(pi.graph, pi.restricted, pi.lists,
                                            gallai::SolveMode::kDistance4);
      if (!d4.ok()) {
        std::vector<std::string> merged;
        for (const auto& v : d3.violations) merged.push_back("distance-3 route: " + v);
        for (const auto& v : d4.violations) merged.push_back("distance-4 route: " + v);
        throw gallai::hypothesis_error(merged);
      }
      total = gallai::solve_distance4(pi.graph, pi.restricted, pi.lists);
    }
  }
  std::cout << gallai::serialize_coloring(total);
  return kOk;
}

int run_oracle(const std::string& input) {
  auto pi = load_problem(input);
  auto result = gallai::exact_list_color(pi.graph, pi.lists);
  if (!result) {
    std::cout << "UNCOLORABLE\n";
    return kNegative;
  }
  std::cout << gallai::serialize_coloring(*result);
  return kOk;
}

int run_verify(const std::string& instance_path, const std::string& coloring_path) {
  auto pi = load_problem(instance_path);
  auto coloring = gallai::parse_coloring(read_file(coloring_path), pi.graph.vertex_count());
  if (auto why = gallai::verify_coloring(pi.graph, pi.lists, coloring)) {
    std::cout << "INVALID: " << *why << "\n";
    return kNegative;
  }
  std::cout << "OK\n";
  return kOk;
}

int run_gen(const std::string& name, int delta, int n, const std::string& mode_flag,
            std::uint64_t seed, const std::string& out_path) {
  gallai::InstanceBundle bundle;
  if (name == "two-cliques") {
    bundle = gallai::gen_clique_pair(delta);
  } else if (name == "fig2") {
    bundle = gallai::gen_clique_cycle(delta);
  } else if (name == "join-d2") {
    bundle = gallai::gen_clique_join(delta);
  } else if (name == "fig3") {
    bundle = gallai::gen_unavoidable_precoloring();
  } else if (name == "random") {
    auto mode =
        mode_flag == "d4" ? gallai::SolveMode::kDistance4 : gallai::SolveMode::kDistance3;
    bundle = gallai::random_instance(delta, n, mode, seed);
  } else {
    std::cerr << "unknown generator '" << name << "'\n";
    return kInputError;
  }
  std::string text = "# " + bundle.note + "\n" + serialize_instance(bundle_to_file(bundle));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return kInputError;
    }
    out << text;
  }
  return kOk;
}

int run_avoid(const std::string& input, const std::string& prop, int k, int d, int d0, int d1,
              const std::string& base_path) {
  auto pi = load_problem(input);
  const auto& phi = pi.precoloring;
  if (phi.domain_size() == 0) throw gallai::parse_error(1, "instance has no precolor records");
  std::vector<int> domain = phi.domain();

  if (prop == "exact") {
    int palette = k > 0 ? k : pi.graph.max_degree();
    auto result = gallai::exact_avoid(pi.graph, phi, palette);
    if (!result) {
      std::cout << "UNAVOIDABLE\n";
      return kNegative;
    }
    std::cout << gallai::serialize_coloring(*result);
    return kOk;
  }
  if (prop == "conflict") {
    gallai::AvoidanceParams params;
    params.d0 = d0;
    params.d1 = d1;
    auto result = gallai::avoid_conflict_graph(pi.graph, domain, phi, params);
    std::cout << gallai::serialize_coloring(result);
    return kOk;
  }
  if (prop == "sparse") {
    auto result = gallai::avoid_sparse_precolored_subgraph(pi.graph, domain, phi, d);
    std::cout << gallai::serialize_coloring(result);
    return kOk;
  }
  if (prop == "small") {
    int classes = k > 0 ? k : static_cast<int>(phi.colors_used().size());
    auto result = gallai::avoid_small_color_classes(pi.graph, phi, classes);
    std::cout << "# oracle-backed\n" << gallai::serialize_coloring(*result);
    return kOk;
  }
  if (prop == "kplus1") {
    if (base_path.empty()) {
      std::cerr << "--base-coloring is required for kplus1\n";
      return kInputError;
    }
    auto base = gallai::parse_coloring(read_file(base_path), pi.graph.vertex_count());
    int colors = k > 0 ? k : (base.colors_used().empty() ? 1 : base.colors_used().back());
    auto result = gallai::avoid_kplus1(pi.graph, phi, colors, base);
    std::cout << gallai::serialize_coloring(result);
    return kOk;
  }
  std::cerr << "unknown proposition '" << prop << "'\n";
  return kInputError;
}

int run_search(int problem, int delta, int max_n, int list_size, int budget,
               std::uint64_t seed) {
  auto mode = problem == 1 ? gallai::SearchProblem::kShortLists
                           : gallai::SearchProblem::kProperPrecolorings;
  auto report = gallai::search_counterexample(delta, max_n, list_size, mode, budget, seed);
  for (const auto& rec : report.records)
    std::cout << "instance " << rec.id << " verdict=" << rec.verdict
              << (rec.detail.empty() ? "" : " " + rec.detail) << "\n";
  std::cout << "# examined " << report.examined << " instances, " << report.counterexamples
            << " counterexamples\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-degree list coloring with shortened lists: solvers, exact oracle, "
               "instance generators, and avoidance routines"};
  app.require_subcommand(1);

  std::string input, coloring_path, mode_flag = "auto", gen_name, out_path, prop = "exact";
  std::string base_path;
  int delta = 4, n = 30, k = 0, d = 3, d0 = 1, d1 = 1;
  int problem = 1, max_n = 9, list_size = 2, budget = 100;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "solve an instance from its lists");
  solve->add_option("--input,-i", input, "instance file")->required();
  solve->add_option("--mode", mode_flag, "auto, d3 or d4")
      ->check(CLI::IsMember({"auto", "d3", "d4"}));

  auto* oracle = app.add_subcommand("oracle", "exact colorability check");
  oracle->add_option("--input,-i", input, "instance file")->required();

  auto* verify = app.add_subcommand("verify", "check a coloring against an instance");
  verify->add_option("--instance", input, "instance file")->required();
  verify->add_option("--coloring", coloring_path, "coloring file")->required();

  auto* gen = app.add_subcommand("gen", "emit a generated instance");
  gen->add_option("name", gen_name, "fig2, fig3, two-cliques, join-d2 or random")->required();
  gen->add_option("--delta", delta, "max degree");
  gen->add_option("--n", n, "vertex count (random)");
  gen->add_option("--mode", mode_flag, "d3 or d4 (random)");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out,-o", out_path, "output file (default stdout)");

  auto* avoid = app.add_subcommand("avoid", "color while avoiding the precoloring");
  avoid->add_option("--input,-i", input, "instance file with precolor records")->required();
  avoid->add_option("--prop", prop, "exact, conflict, sparse, small or kplus1")
      ->check(CLI::IsMember({"exact", "conflict", "sparse", "small", "kplus1"}));
  avoid->add_option("--k", k, "palette / color count");
  avoid->add_option("--d", d, "density threshold (sparse)");
  avoid->add_option("--d0", d0, "restricted-neighbor bound (conflict)");
  avoid->add_option("--d1", d1, "component bound (conflict)");
  avoid->add_option("--base-coloring", base_path, "proper k-coloring file (kplus1)");

  auto* search = app.add_subcommand("search", "experimental counterexample search");
  search->add_option("--problem", problem, "1: short lists, 2: proper precolorings")
      ->check(CLI::IsMember({1, 2}));
  search->add_option("--delta", delta, "max degree");
  search->add_option("--max-n", max_n, "largest instance size");
  search->add_option("--list-size", list_size, "list size on the restricted set");
  search->add_option("--budget", budget, "instances to examine");
  search->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kInputError;
  }

  try {
    if (solve->parsed()) return run_solve(input, mode_flag == "auto" ? "" : mode_flag);
    if (oracle->parsed()) return run_oracle(input);
    if (verify->parsed()) return run_verify(input, coloring_path);
    if (gen->parsed()) return run_gen(gen_name, delta, n, mode_flag, seed, out_path);
    if (avoid->parsed()) return run_avoid(input, prop, k, d, d0, d1, base_path);
    if (search->parsed()) return run_search(problem, delta, max_n, list_size, budget, seed);
  } catch (const gallai::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const gallai::hypothesis_error& e) {
    std::cerr << "hypothesis violation:\n";
    for (const auto& v : e.violations()) std::cerr << "  - " << v << "\n";
    return kHypothesisViolation;
  } catch (const gallai::internal_error& e) {
    std::cerr << e.what() << "\n";
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
