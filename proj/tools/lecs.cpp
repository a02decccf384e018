// Command-line front end: census, generate, verify, solve, render, proptest.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lecs/io.hpp"
#include "lecs/reduction.hpp"
#include "lecs/solvers.hpp"

using namespace lecs;

namespace {

// Exit codes: 0 success / agreement, 1 disagreement or failed property, 2 usage or input error,
// 3 internal error (a construction or certification bug).
constexpr int kDisagree = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

int cmd_census(int k) {
  auto c = census(k);
  std::cout << "k " << k << "\n";
  std::cout << "hbar   " << c.hbar << "\n";
  std::cout << "vbar   " << c.vbar << "\n";
  std::cout << "diag   " << c.diag << "\n";
  std::cout << "tee    " << c.tee << "\n";
  std::cout << "trimux " << c.trimux << "\n";
  std::cout << "star   " << c.star << "\n";
  std::cout << "total  " << c.total() << "\n";
  std::cout << "local maxima sum " << c.local_sum() << "\n";
  std::cout << "target " << target_size(k) << "\n";
  std::cout << "realized target " << computed_target(k) << "\n";
  return 0;
}

Gadget standalone_gadget(const std::string& kind, int n, const Graph& g) {
  auto P = [](long x, long y) { return Point2{Scalar(x), Scalar(y)}; };
  auto v = [&](int id, Point2 a, Point2 b) { return make_track(id, a, b, vertex_labels(n)); };
  Frame unit = unit_cell(0, 0);
  if (kind == "hbar") return build_hbar(n, unit, v(0, P(0, 0), P(0, 1)), v(1, P(1, 0), P(1, 1)));
  if (kind == "vbar") return build_vbar(n, unit, v(0, P(0, 0), P(1, 0)), v(1, P(0, 1), P(1, 1)));
  if (kind == "diag") return build_diag(n, unit, v(0, P(0, 0), P(0, 1)), v(1, P(0, 0), P(1, 0)));
  if (kind == "tee")
    return build_tee(n, unit, v(0, P(0, 0), P(0, 1)), v(1, P(1, 0), P(1, 1)), v(2, P(0, 0), P(1, 0)));
  if (kind == "mux" || kind == "demux") {
    auto wide = make_track(1, P(1, 0), P(1, 1), pair_labels(n, true));
    return build_trimux(n, unit, v(0, P(0, 0), P(0, 1)), wide, 0, kind == "demux");
  }
  if (kind == "star") return build_star(n, g.adjacency(), unit, v(0, P(0, 0), P(0, 1)), v(1, P(1, 0), P(1, 1)));
  if (kind == "cross")
    return build_cross(n, Frame{P(0, 0), 4, 4}, v(0, P(0, 1), P(0, 2)), v(1, P(1, 0), P(2, 0)),
                       v(2, P(4, 1), P(4, 2)), v(3, P(1, 4), P(2, 4)), 10);
  throw std::invalid_argument("unknown gadget kind '" + kind + "'");
}

struct GenerateArgs {
  std::string graph, output = "-", gadget;
  int k = 0, n = 0;
  bool lifted = false;
};

int cmd_generate(const GenerateArgs& a) {
  if (!a.gadget.empty()) {
    Graph g = a.graph.empty() ? Graph::complete(std::max(a.n, 1)) : read_graph(a.graph);
    int n = a.n > 0 ? a.n : g.n;
    auto doc = gadget_doc(standalone_gadget(a.gadget, n, g));
    write_file(a.output, format_instance(doc));
    std::cerr << a.gadget << " n=" << n << ": " << doc.points.size() << " points\n";
    return 0;
  }
  if (a.graph.empty()) throw CLI::ValidationError("generate", "--graph is required unless --gadget is given");
  if (a.k < 1) throw CLI::ValidationError("generate", "-k must be at least 1");
  Graph g = read_graph(a.graph);
  Instance inst = assemble(g, a.k);
  if (a.lifted) inst = lift(inst);
  write_file(a.output, format_instance(instance_doc(inst)));
  std::cerr << "n=" << g.n << " k=" << a.k << ": " << inst.points.size() << " points, target "
            << inst.target << "\n";
  if (!inst.rec.matches()) std::cerr << inst.rec.report() << "\n";
  return 0;
}

int cmd_verify(const std::string& input, const std::string& graph, int k) {
  if (k < 1) throw CLI::ValidationError("verify", "-k must be at least 1");
  Graph g = read_graph(graph);
  InstanceDoc doc = read_instance(input);
  Instance inst = assemble(g, k);
  Instance lifted = lift(inst);
  const Instance& same = doc.points.dim == 3 ? lifted : inst;
  if (!(doc.points == same.points)) {
    std::cerr << "error: the instance file was not generated from this graph and k\n";
    return kInputError;
  }
  auto verdict = global_verify(lifted, g, k);
  auto clique = clique_oracle(g, k);
  std::cout << "construction: " << (verdict.found ? "YES" : "NO") << " (" << verdict.candidates
            << " consistent assignments certified)\n";
  if (verdict.found) std::cout << "certificate: " << join(verdict.certificates.front().clique) << "\n";
  std::cout << "clique oracle: " << (clique ? "YES" : "NO");
  if (clique) std::cout << " (" << join(*clique) << ")";
  std::cout << "\n";
  if (verdict.found != clique.has_value()) {
    std::cout << "DISAGREE\n";
    return kDisagree;
  }
  std::cout << "agree: " << (verdict.found ? "YES" : "NO") << "\n";
  return 0;
}

void print_report(const SolveReport& r, const LabeledPointSet& pts) {
  std::cout << "best " << r.best << "\n";
  std::cout << "optimal " << (r.optimal ? "yes" : "no") << "\n";
  std::cout << "nodes " << r.nodes << "\n";
  if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  std::cout << "witness";
  for (auto i : r.witness) std::cout << " " << i;
  std::cout << "\n";
  for (auto i : r.witness) {
    const auto& p = pts.coords[i];
    std::cout << "  " << format_scalar(p.x) << " " << format_scalar(p.y);
    if (pts.dim == 3) std::cout << " " << format_scalar(p.z);
    std::cout << "\n";
  }
}

int cmd_solve(const std::string& input, const std::string& mode, const SearchBudget& budget) {
  InstanceDoc doc = read_points(input);
  SolveReport r = mode == "brute" ? brute_force_lecs(doc.points, budget) : track_aware_max(doc.points, budget);
  std::cout << "points " << doc.points.size() << "\n";
  std::cout << "mode " << mode << "\n";
  print_report(r, doc.points);
  return 0;
}

int cmd_render(const std::string& input, const std::string& output, bool show_choices) {
  InstanceDoc doc = read_instance(input);
  auto ends_with = [&](const std::string& s) {
    return output.size() >= s.size() && output.compare(output.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".svg")) {
    SvgOptions opt;
    opt.show_choices = show_choices;
    write_file(output, render_svg(doc, opt));
  } else if (ends_with(".obj")) {
    write_file(output, render_obj(doc));
  } else {
    throw CLI::ValidationError("render", "output must end in .svg or .obj");
  }
  return 0;
}

struct ProptestArgs {
  unsigned seed = 1;
  int n_max = 3, k_max = 2, trials = 20;
};

bool lemma_holds(const Graph& g, int k) {
  auto verdict = global_verify(lift(assemble(g, k)), g, k);
  return verdict.found == clique_oracle(g, k).has_value();
}

int cmd_proptest(const ProptestArgs& a) {
  if (a.n_max < 1 || a.k_max < 1 || a.trials < 0)
    throw CLI::ValidationError("proptest", "bounds must be positive");
  std::mt19937 rng(a.seed);
  int agree = 0;
  std::vector<std::pair<Graph, int>> failures;
  for (int t = 0; t < a.trials; ++t) {
    int n = std::uniform_int_distribution<int>(1, a.n_max)(rng);
    int k = std::uniform_int_distribution<int>(1, std::min(a.k_max, n))(rng);
    Graph g(n);
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (std::bernoulli_distribution(0.5)(rng)) g.add_edge(u, v);
    if (lemma_holds(g, k)) {
      ++agree;
      continue;
    }
    // minimize: drop edges while the disagreement persists
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (auto e : g.edges) {
        Graph h = g;
        h.edges.erase(e);
        if (!lemma_holds(h, k)) {
          g = h;
          shrunk = true;
          break;
        }
      }
    }
    failures.emplace_back(g, k);
  }
  std::cout << "proptest seed " << a.seed << ": " << agree << "/" << a.trials << " agreements\n";
  for (const auto& [g, k] : failures) std::cout << "disagreement at k=" << k << " on graph\n" << format_graph(g);
  return failures.empty() ? 0 : kDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance generator and exact solvers for largest empty convex subsets"};
  app.require_subcommand(1);

  int census_k = 0;
  auto* census_cmd = app.add_subcommand("census", "Print gadget counts and target size for k");
  census_cmd->add_option("-k", census_k, "Clique size")->required()->check(CLI::Range(1, 1000000));

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Build the instance for a graph and k");
  gen_cmd->add_option("-g,--graph", gen.graph, "Graph file")->check(CLI::ExistingFile);
  gen_cmd->add_option("-k", gen.k, "Clique size");
  gen_cmd->add_option("-o,--output", gen.output, "Instance file to write ('-' for stdout)");
  auto* planar = gen_cmd->add_flag("--planar", "Write the planar construction (default)");
  auto* lifted = gen_cmd->add_flag("--lifted", gen.lifted, "Write the construction lifted to 3D");
  planar->excludes(lifted);
  gen_cmd->add_option("--gadget", gen.gadget, "Write one standalone gadget instead (hbar, vbar, diag, tee, mux, demux, star, cross)");
  gen_cmd->add_option("-n", gen.n, "Labels per track for --gadget (defaults to the graph's vertex count)");

  std::string verify_input, verify_graph;
  int verify_k = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check the construction against the clique oracle");
  verify_cmd->add_option("-i,--input", verify_input, "Instance file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("-g,--graph", verify_graph, "Graph file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("-k", verify_k, "Clique size")->required();

  std::string solve_input, solve_mode = "track";
  SearchBudget budget;
  auto* solve_cmd = app.add_subcommand("solve", "Largest empty convex subset of an instance or point file");
  solve_cmd->add_option("-i,--input", solve_input, "Instance or raw point file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--mode", solve_mode, "brute or track")->check(CLI::IsMember({"brute", "track"}));
  solve_cmd->add_option("--max-points", budget.max_points, "Largest input for brute force")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--node-limit", budget.node_limit, "Search nodes before giving up")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--time-limit", budget.time_limit, "Seconds before giving up (0: none)")->check(CLI::NonNegativeNumber);

  std::string render_input, render_output;
  bool show_choices = false;
  auto* render_cmd = app.add_subcommand("render", "Draw a planar instance as SVG or a lifted one as OBJ");
  render_cmd->add_option("-i,--input", render_input, "Instance file")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("-o,--output", render_output, "Output path ending in .svg or .obj")->required();
  render_cmd->add_flag("--show-choices", show_choices, "Overlay valid and cancelled choices (SVG)");

  ProptestArgs prop;
  auto* prop_cmd = app.add_subcommand("proptest", "Compare construction and clique oracle on random graphs");
  prop_cmd->add_option("--seed", prop.seed, "Random seed");
  prop_cmd->add_option("--n-max", prop.n_max, "Largest vertex count");
  prop_cmd->add_option("--k-max", prop.k_max, "Largest clique size");
  prop_cmd->add_option("--trials", prop.trials, "Number of random graphs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*census_cmd) return cmd_census(census_k);
    if (*gen_cmd) return cmd_generate(gen);
    if (*verify_cmd) return cmd_verify(verify_input, verify_graph, verify_k);
    if (*solve_cmd) return cmd_solve(solve_input, solve_mode, budget);
    if (*render_cmd) return cmd_render(render_input, render_output, show_choices);
    if (*prop_cmd) return cmd_proptest(prop);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BuildError& e) {
    std::cerr << "error: gadget construction failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return 0;
}
