#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radoloc/boolean_identity.hpp"
#include "radoloc/construction.hpp"
#include "radoloc/fusion.hpp"
#include "radoloc/labeling.hpp"
#include "radoloc/rado.hpp"

namespace {

using namespace radoloc;

enum Status { kPass = 0, kFail = 1, kUsage = 2, kUndecided = 3, kExhausted = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t env_bound(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used == std::string(v).size() && n > 0) return n;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(name) + " must be a positive integer, got '" + v + "'");
}

// "0,1,2", "{0,1,2}", "∅" or "".
VertexSet parse_set(std::string text) {
  if (text == "∅" || text == "{}") return {};
  if (!text.empty() && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
  VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(Natural::parse(item));
    } catch (const std::invalid_argument&) {
      throw UsageError("'" + item + "' is not a vertex");
    }
  }
  return make_set(std::move(out));
}

rado::Cone parse_cone(const std::string& H, const std::string& K) {
  try {
    return rado::Cone(parse_set(H), parse_set(K));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  std::cerr << "wrote " << path << "\n";
}

int print_reports(const std::vector<Report>& reports) {
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.render();
    ok = ok && r.passed();
  }
  std::cout << "verdict: " << (ok ? "pass" : "fail") << "\n";
  return ok ? kPass : kFail;
}

// Everything run after a construction, shared by construct and replay so the
// two print the same report.
std::vector<Report> verify_construction(const construction::ConstructionState& s,
                                        const std::optional<trees::FiniteTree>& stored_T) {
  using namespace construction;
  std::vector<Report> out;
  Report summary{"construction summary"};
  summary.note("depth " + std::to_string(s.depth) + ", name model " + s.names->selector());
  std::string ls;
  for (auto v : s.l) ls += (ls.empty() ? "" : ",") + std::to_string(v);
  summary.note("l = [" + ls + "]");
  out.push_back(summary);
  out.push_back(verify_state(s));
  out.push_back(check_adjacency_laws(s));
  for (std::size_t n = 0; n <= s.depth; ++n) out.push_back(check_antichain(s, n));
  auto D = extract_D(s);
  std::string ds;
  for (const auto& d : D.D) ds += (ds.empty() ? "" : ", ") + d.to_string();
  D.report.note("D = [" + ds + "]");
  out.push_back(D.report);
  auto F = embed_F(s);
  out.push_back(F.report);
  Report binary{"T is a binary tree"};
  if (!trees::check_binary(F.T)) binary.fail("check_binary rejects T");
  binary.note(std::to_string(F.T.size()) + " nodes");
  if (stored_T && *stored_T != F.T) binary.fail("the stored T differs from the recomputed one");
  out.push_back(binary);
  for (auto n : admissible_localize_levels(s)) out.push_back(localize_check(s, F.T, *s.names, n));
  return out;
}

int cmd_witness(const std::string& H, const std::string& K) {
  const auto c = parse_cone(H, K);
  const Vertex w = rado::witness(c);
  std::cout << w.to_string() << "\n";
  std::cout << "certificate: " << w.to_string() << " ∈ R^H_K" << c.to_string() << " is "
            << (rado::cone_member(w, c) ? "true" : "false") << "\n";
  return rado::cone_member(w, c) ? kPass : kFail;
}

int cmd_classify(const std::string& v, const std::string& H) {
  Vertex x;
  try {
    x = Natural::parse(v);
  } catch (const std::invalid_argument&) {
    throw UsageError("'" + v + "' is not a vertex");
  }
  const auto part = rado::classify_vertex(x, parse_set(H));
  if (part.in_H) {
    std::cout << x.to_string() << " ∈ H\n";
  } else {
    std::cout << "K=" << set_to_string(part.K) << "\n";
  }
  return kPass;
}

int cmd_intersect(const std::string& H1, const std::string& K1, const std::string& H2, const std::string& K2) {
  const auto a = parse_cone(H1, K1);
  const auto b = parse_cone(H2, K2);
  const auto c = rado::cone_intersection(a, b);
  if (!c) {
    std::cout << "disjoint\n";
    return kPass;
  }
  std::cout << "R^H_K" << c->to_string() << "\n";
  std::cout << "witness " << rado::witness(*c).to_string() << "\n";
  std::cout << "subset: first " << (rado::cone_subset(a, b) ? "⊆" : "⊄") << " second, second "
            << (rado::cone_subset(b, a) ? "⊆" : "⊄") << " first\n";
  return kPass;
}

int cmd_labeling(std::size_t depth, std::uint64_t bound, bool search) {
  if (depth > Labeling::kMaxMaterialLevel) {
    throw UsageError("--depth must be at most " + std::to_string(Labeling::kMaxMaterialLevel));
  }
  auto lab = Labeling::build(std::make_shared<WholeGraph>(), {.search_bound = bound, .closed_form = !search});
  for (std::size_t n = 0; n <= depth; ++n) lab->level(n);
  return print_reports({verify_labeling(*lab, depth)});
}

int cmd_construct(std::size_t depth, const std::string& selector, const std::string& out,
                  const std::string& dot, std::size_t split_bound, std::uint64_t search_bound, bool search) {
  using namespace construction;
  std::shared_ptr<const NameModel> names;
  try {
    names = name_model_from_selector(selector);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto lab = Labeling::build(std::make_shared<WholeGraph>(),
                             {.search_bound = search_bound, .closed_form = !search});
  const auto s = run_construction(lab, names, depth, split_bound);
  const auto T = embed_F(s).T;
  if (!out.empty()) write_file(out, state_to_json(s, &T).dump(1) + "\n");
  if (!dot.empty()) write_file(dot, trees::to_dot(T));
  return print_reports(verify_construction(s, T));
}

int cmd_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  construction::LoadedState loaded;
  try {
    loaded = construction::state_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
  std::cerr << "replaying " << path << "\n";
  return print_reports(verify_construction(loaded.state, loaded.T));
}

struct IdentityArgs {
  unsigned atoms = 3;
  std::size_t rows = 4;
  std::size_t cols = 4;
  std::size_t cases = 1000;
  std::uint64_t seed = 0;
  std::size_t trees = 0;
  std::string matrix;
  bool serial = false;
  bool verbose = false;
};

int cmd_identity(const IdentityArgs& a) {
  using namespace boolean;
  if (!a.matrix.empty()) {
    ValueMatrix mat = [&] {
      try {
        return read_matrix_file(a.matrix);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    std::mt19937_64 rng(splitmix(a.seed, 0));
    std::vector<IndexTree> sample;
    for (std::size_t t = 0; t < a.trees; ++t) sample.push_back(random_binary_tree(rng, mat.rows(), mat.cols()));
    return print_reports({check_identity(mat, sample)});
  }
  if (a.atoms < 1 || a.atoms > 64) throw UsageError("--atoms must be between 1 and 64");
  if (a.rows < 1 || a.cols < 1) throw UsageError("--rows and --cols must be positive");
  const FuzzConfig config{a.atoms, a.rows, a.cols, a.cases, a.seed, a.trees};
  const auto outcome = a.serial ? fuzz_identity_serial(config) : fuzz_identity_parallel(config);
  if (a.verbose) {
    for (std::size_t i = 0; i < config.cases; ++i) {
      std::mt19937_64 rng(splitmix(config.seed, i));
      const auto mat = random_matrix(rng, config.atoms, config.rows, config.cols);
      std::cout << "case " << i << ": lhs " << element_to_string(lhs(mat)) << ", rhs "
                << element_to_string(rhs_atomwise(mat).value) << "\n";
    }
  }
  std::cout << "identity: " << outcome.cases << " cases on " << a.atoms << " atoms, " << a.rows << "x" << a.cols
            << ", " << a.trees << " trees each, seed " << a.seed << ": " << outcome.failures << " failures\n";
  if (outcome.counterexample) {
    std::cout << "first counterexample (case " << *outcome.first_failure << "):\n"
              << matrix_to_text(*outcome.counterexample) << outcome.counterexample_report->render();
  }
  std::cout << "verdict: " << (outcome.failures ? "fail" : "pass") << "\n";
  return outcome.failures ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rado2loc: checkers for the random graph, its labelings and tree localization"};
  app.require_subcommand(1);
  int status = kPass;
  std::function<int()> action;

  const std::uint64_t default_search = [] {
    try {
      return env_bound("RADO2LOC_SEARCH_BOUND", LabelingOptions{}.search_bound);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      std::exit(kUsage);
    }
  }();
  const std::size_t default_split = [] {
    try {
      return env_bound("RADO2LOC_SPLIT_BOUND", construction::kDefaultSplitBound);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      std::exit(kUsage);
    }
  }();

  auto* rado = app.add_subcommand("rado", "Cone calculus on the random graph");
  rado->require_subcommand(1);
  std::string H, K, H2, K2, v;
  auto* witness = rado->add_subcommand("witness", "Closed-form member of R^H_K");
  witness->add_option("--H", H, "H as 0,1,2 or ∅")->required();
  witness->add_option("--K", K, "K ⊆ H")->required();
  witness->callback([&] { action = [&] { return cmd_witness(H, K); }; });
  auto* classify = rado->add_subcommand("classify", "Part of {H} ∪ {R^H_K} holding v");
  classify->add_option("--v", v, "vertex")->required();
  classify->add_option("--H", H, "H")->required();
  classify->callback([&] { action = [&] { return cmd_classify(v, H); }; });
  auto* intersect = rado->add_subcommand("intersect", "Intersection of two cones");
  intersect->add_option("--H1", H, "first H")->required();
  intersect->add_option("--K1", K, "first K")->required();
  intersect->add_option("--H2", H2, "second H")->required();
  intersect->add_option("--K2", K2, "second K")->required();
  intersect->callback([&] { action = [&] { return cmd_intersect(H, K, H2, K2); }; });

  std::size_t lab_depth = 3;
  std::uint64_t search_bound = default_search;
  auto* labeling = app.add_subcommand("labeling", "Verify the identity labeling");
  labeling->add_option("--depth", lab_depth, "levels 0..depth")->capture_default_str();
  labeling->add_option("--bound", search_bound, "least-index search bound")->check(CLI::PositiveNumber);
  bool search = false;
  labeling->add_flag("--search", search, "place by least-index search instead of the formula");
  labeling->callback([&] { action = [&] { return cmd_labeling(lab_depth, search_bound, search); }; });

  std::size_t depth = 4;
  std::string selector = "encode";
  std::string out, dot;
  std::size_t split_bound = default_split;
  auto* construct = app.add_subcommand("construct", "Build, verify and save a construction");
  construct->add_option("--depth", depth, "stages")->capture_default_str();
  construct->add_option("--name-model", selector, "encode | constant:<v> | file:<path>")->capture_default_str();
  construct->add_option("--out", out, "state file");
  construct->add_option("--dot", dot, "DOT file for T");
  construct->add_option("--bound", split_bound, "split search bound")->check(CLI::PositiveNumber);
  construct->add_option("--search-bound", search_bound, "least-index search bound")->check(CLI::PositiveNumber);
  construct->add_flag("--search", search, "place by least-index search instead of the formula");
  construct->callback([&] {
    action = [&] { return cmd_construct(depth, selector, out, dot, split_bound, search_bound, search); };
  });

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-verify a saved construction");
  replay->add_option("file", replay_path, "state file")->required();
  replay->callback([&] { action = [&] { return cmd_replay(replay_path); }; });

  IdentityArgs ia;
  auto* identity = app.add_subcommand("identity", "Fuzz the Boolean localization identity");
  identity->add_option("--atoms", ia.atoms, "atoms")->capture_default_str();
  identity->add_option("--rows", ia.rows, "rows N")->capture_default_str();
  identity->add_option("--cols", ia.cols, "columns M")->capture_default_str();
  identity->add_option("--cases", ia.cases, "fuzz cases")->capture_default_str();
  identity->add_option("--seed", ia.seed, "seed")->capture_default_str();
  identity->add_option("--trees", ia.trees, "sampled trees per case")->capture_default_str();
  identity->add_option("--matrix", ia.matrix, "check one matrix file instead of fuzzing");
  identity->add_flag("--serial", ia.serial, "use the serial kernel");
  identity->add_flag("--verbose", ia.verbose, "print every case");
  identity->callback([&] { action = [&] { return cmd_identity(ia); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    status = action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const construction::Undecided& e) {
    std::cout << "status: undecided\n" << e.what() << "\n";
    return kUndecided;
  } catch (const SearchExhausted& e) {
    std::cout << "status: search exhausted\n" << e.what() << "\n";
    return kExhausted;
  } catch (const LevelUnavailable& e) {
    std::cout << "status: level unavailable\n" << e.what() << "\n";
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return status;
}
