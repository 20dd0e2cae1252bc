#include <cstdio>
#include <fstream>
#include <memory>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gassoc/gassoc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

/// Thrown to leave a subcommand with a given exit code.
struct Exit {
  int code;
};

int exit_code(gassoc_status s) {
  switch (s) {
    case GASSOC_OK:
      return kExitOk;
    case GASSOC_ERR_VERIFY:
      return kExitVerify;
    case GASSOC_ERR_INPUT:
      return kExitInput;
    default:
      return 3;
  }
}

void check(gassoc_status s) {
  if (s == GASSOC_OK) return;
  std::cerr << "error: " << gassoc_last_error() << "\n";
  throw Exit{exit_code(s)};
}

/// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  gassoc_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    throw Exit{kExitInput};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Graph {
  gassoc_graph* g = nullptr;
  explicit Graph(const std::string& path) { check(gassoc_graph_read(path.c_str(), &g)); }
  ~Graph() { gassoc_graph_free(g); }
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
};

struct Flips {
  gassoc_flipgraph* f = nullptr;
  explicit Flips(const Graph& g) { check(gassoc_flipgraph_build(g.g, &f)); }
  ~Flips() { gassoc_flipgraph_free(f); }
  Flips(const Flips&) = delete;
  Flips& operator=(const Flips&) = delete;

  int find_file(const std::string& path) const {
    int id = -1;
    check(gassoc_flipgraph_find(f, read_file(path).c_str(), &id));
    return id;
  }
  std::string tubing(int id) const {
    char* s = nullptr;
    check(gassoc_flipgraph_tubing(f, id, &s));
    return take(s);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flip graphs of graph associahedra and nestohedra"};
  app.require_subcommand(1, 1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for all-sources BFS")->check(CLI::PositiveNumber);

  std::string graph_path;
  auto add_graph = [&](CLI::App* sub) { sub->add_option("graph", graph_path, "Graph file")->required(); };

  auto* tubes = app.add_subcommand("tubes", "List the tubes of a graph");
  add_graph(tubes);

  auto* flipgraph = app.add_subcommand("flipgraph", "Export the flip graph");
  add_graph(flipgraph);
  bool as_dot = false;
  bool as_json = false;
  auto* dot_flag = flipgraph->add_flag("--dot", as_dot, "DOT output");
  flipgraph->add_flag("--json", as_json, "JSON output (default)")->excludes(dot_flag);

  auto* diameter = app.add_subcommand("diameter", "Diameter of the flip graph");
  add_graph(diameter);

  std::string from_path;
  std::string to_path;
  auto* distance = app.add_subcommand("distance", "Flip distance between two maximal tubings");
  add_graph(distance);
  distance->add_option("--from", from_path, "Tubing file")->required();
  distance->add_option("--to", to_path, "Tubing file")->required();

  std::size_t limit = 1000000;
  auto* geodesics = app.add_subcommand("geodesics", "All shortest flip sequences between two tubings");
  add_graph(geodesics);
  geodesics->add_option("--from", from_path, "Tubing file")->required();
  geodesics->add_option("--to", to_path, "Tubing file")->required();
  geodesics->add_option("--limit", limit, "Maximum number of paths")->check(CLI::PositiveNumber);

  std::vector<std::string> force;
  bool verify_cycle = false;
  bool cycle_dot = false;
  bool cycle_json = false;
  auto* hamiltonian = app.add_subcommand("hamiltonian", "Hamiltonian cycle of the flip graph");
  add_graph(hamiltonian);
  hamiltonian->add_option("--force", force, "Two ridge files: short flips the cycle must use")->expected(2);
  hamiltonian->add_flag("--verify", verify_cycle, "Check the cycle");
  auto* hdot = hamiltonian->add_flag("--dot", cycle_dot, "DOT output with the cycle colored");
  hamiltonian->add_flag("--json", cycle_json, "JSON output")->excludes(hdot);

  std::string suite;
  int min_n = 1;
  int max_n = 5;
  int exact_n = 0;
  std::string verify_graph;
  auto* verify = app.add_subcommand("verify", "Exhaustive property checks");
  verify->add_option("suite", suite, "bounds, monotone, snlfp, sigma or regular")
      ->required()
      ->check(CLI::IsMember({"bounds", "monotone", "snlfp", "sigma", "regular"}));
  verify->add_option("graph", verify_graph, "Check a single graph instead of all small graphs");
  auto* n_opt = verify->add_option("--n", exact_n, "Only graphs with exactly this many vertices");
  verify->add_option("--min-n", min_n, "Smallest vertex count")->excludes(n_opt);
  verify->add_option("--max-n", max_n, "Largest vertex count (elements for snlfp)")->excludes(n_opt);

  std::string kind;
  int fam_n = 0;
  int fam_k = 0;
  bool fam_json = false;
  auto* family = app.add_subcommand("family", "Print a graph from a named family");
  family->add_option("kind", kind, "path, cycle, complete, star or tk")
      ->required()
      ->check(CLI::IsMember({"path", "cycle", "complete", "star", "tk"}));
  family->add_option("--n", fam_n, "Vertices (leaves for star, depth for tk)")->required();
  family->add_option("--k", fam_k, "Depth for tk");
  family->add_flag("--json", fam_json, "JSON output");

  std::string experiment_name;
  int max_k = 2;
  std::string out_path;
  auto* experiment = app.add_subcommand("experiment", "Run a diameter experiment");
  experiment->add_option("name", experiment_name, "tk-diameter")->required()->check(CLI::IsMember({"tk-diameter"}));
  experiment->add_option("--max-k", max_k, "Largest depth")->required()->check(CLI::PositiveNumber);
  experiment->add_option("--out", out_path, "CSV file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return kExitInput;
  }

  try {
    if (*tubes) {
      Graph g(graph_path);
      char* s = nullptr;
      check(gassoc_graph_tubes(g.g, &s));
      std::cout << take(s) << "\n";
    } else if (*flipgraph) {
      Graph g(graph_path);
      Flips f(g);
      char* s = nullptr;
      check(as_dot ? gassoc_flipgraph_dot(f.f, nullptr, 0, &s) : gassoc_flipgraph_json(f.f, &s));
      std::cout << take(s) << "\n";
    } else if (*diameter) {
      Graph g(graph_path);
      Flips f(g);
      int d = 0;
      check(gassoc_flipgraph_diameter(f.f, threads, &d));
      std::cout << d << "\n";
    } else if (*distance) {
      Graph g(graph_path);
      Flips f(g);
      int d = 0;
      check(gassoc_flipgraph_distance(f.f, f.find_file(from_path), f.find_file(to_path), &d));
      std::cout << d << "\n";
    } else if (*geodesics) {
      Graph g(graph_path);
      Flips f(g);
      char* s = nullptr;
      check(gassoc_flipgraph_geodesics(f.f, f.find_file(from_path), f.find_file(to_path), limit, &s));
      const auto json = nlohmann::json::parse(take(s));
      for (const auto& path : json["paths"]) {
        std::string line;
        for (int id : path) line += (line.empty() ? "" : " -> ") + f.tubing(id);
        std::cout << line << "\n";
      }
      std::cout << "paths " << json["paths"].size() << (json["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
    } else if (*hamiltonian) {
      Graph g(graph_path);
      std::string f1;
      std::string f2;
      if (force.size() == 2) {
        f1 = read_file(force[0]);
        f2 = read_file(force[1]);
      }
      char* s = nullptr;
      const gassoc_status st = gassoc_hamiltonian(g.g, force.empty() ? nullptr : f1.c_str(),
                                                  force.empty() ? nullptr : f2.c_str(), verify_cycle ? 1 : 0, &s);
      if (st != GASSOC_OK && st != GASSOC_ERR_VERIFY) check(st);
      const std::string text = take(s);
      if (cycle_json) {
        std::cout << text << "\n";
      } else {
        Flips f(g);
        const auto ids = nlohmann::json::parse(text)["ids"].get<std::vector<int>>();
        if (cycle_dot) {
          char* d = nullptr;
          check(gassoc_flipgraph_dot(f.f, ids.data(), ids.size(), &d));
          std::cout << take(d) << "\n";
        } else {
          for (int id : ids) std::cout << f.tubing(id) << "\n";
          std::cout << "length " << ids.size() << "\n";
          if (verify_cycle) std::cout << (st == GASSOC_OK ? "verified" : "NOT verified") << "\n";
        }
      }
      if (st != GASSOC_OK) {
        std::cerr << "error: " << gassoc_last_error() << "\n";
        return exit_code(st);
      }
    } else if (*verify) {
      std::unique_ptr<Graph> g;
      if (!verify_graph.empty()) g = std::make_unique<Graph>(verify_graph);
      if (exact_n > 0) min_n = max_n = exact_n;
      char* s = nullptr;
      const gassoc_status st = gassoc_verify(suite.c_str(), g ? g->g : nullptr, min_n, max_n, threads, &s);
      if (st != GASSOC_OK && st != GASSOC_ERR_VERIFY) check(st);
      std::cout << take(s) << "\n";
      return exit_code(st);
    } else if (*family) {
      gassoc_graph* g = nullptr;
      check(gassoc_graph_family(kind.c_str(), fam_n, fam_k, &g));
      char* s = nullptr;
      const gassoc_status st = fam_json ? gassoc_graph_json(g, &s) : gassoc_graph_text(g, &s);
      gassoc_graph_free(g);
      check(st);
      std::cout << take(s);
      if (fam_json) std::cout << "\n";
    } else if (*experiment) {
      char* s = nullptr;
      check(gassoc_experiment_tk_diameter(max_k, threads, &s));
      const std::string csv = take(s);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(out_path);
        if (!(out << csv)) {
          std::cerr << "error: cannot write " << out_path << "\n";
          return kExitInput;
        }
      }
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitOk;
}
