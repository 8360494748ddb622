#include "radoloc/boolean_identity.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace radoloc::boolean {

Element top(unsigned atoms) { return atoms >= 64 ? ~Element{0} : (Element{1} << atoms) - 1; }

std::string element_to_string(Element e) {
  if (e == 0) return "⊥";
  std::string out = "{";
  for (unsigned a = 0; a < 64; ++a) {
    if ((e >> a) & 1U) out += (out.size() > 1 ? "," : "") + std::to_string(a);
  }
  return out + "}";
}

ValueMatrix::ValueMatrix(unsigned atoms, std::size_t rows, std::size_t cols)
    : atoms_(atoms), rows_(rows), cols_(cols) {
  if (atoms < 1 || atoms > 64) throw std::invalid_argument("atoms must be between 1 and 64");
  if (rows < 1 || cols < 1) throw std::invalid_argument("rows and cols must be positive");
  b_.assign(rows * cols, 0);
}

void ValueMatrix::set(std::size_t n, std::size_t m, Element e) {
  if (n >= rows_ || m >= cols_) {
    throw IndexOutOfRange("entry (" + std::to_string(n) + "," + std::to_string(m) + ") outside " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (e & ~top()) throw std::invalid_argument("entry has bits past atom " + std::to_string(atoms_ - 1));
  b_[n * cols_ + m] = e;
}

ValueMatrix read_matrix(std::istream& in) {
  unsigned atoms = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(in >> atoms >> rows >> cols)) throw std::invalid_argument("matrix header must be 'atoms rows cols'");
  ValueMatrix mat(atoms, rows, cols);
  for (std::size_t n = 0; n < rows; ++n) {
    for (std::size_t m = 0; m < cols; ++m) {
      std::string word;
      if (!(in >> word)) throw std::invalid_argument("matrix ends before entry (" + std::to_string(n) + "," + std::to_string(m) + ")");
      std::size_t used = 0;
      Element e = 0;
      try {
        e = std::stoull(word, &used, 0);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != word.size() || word.front() == '-') throw std::invalid_argument("bad bitmask '" + word + "'");
      mat.set(n, m, e);
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing text after the matrix: '" + extra + "'");
  return mat;
}

ValueMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file " + path);
  return read_matrix(in);
}

std::string matrix_to_text(const ValueMatrix& mat) {
  std::ostringstream out;
  out << mat.atoms() << ' ' << mat.rows() << ' ' << mat.cols() << '\n';
  for (std::size_t n = 0; n < mat.rows(); ++n) {
    for (std::size_t m = 0; m < mat.cols(); ++m) out << (m ? " " : "") << mat.at(n, m);
    out << '\n';
  }
  return out.str();
}

Element lhs(const ValueMatrix& mat) {
  Element meet = mat.top();
  for (std::size_t n = 0; n < mat.rows(); ++n) {
    Element join = 0;
    for (std::size_t m = 0; m < mat.cols(); ++m) join |= mat.at(n, m);
    meet &= join;
  }
  return meet;
}

AtomwiseResult rhs_atomwise(const ValueMatrix& mat) {
  AtomwiseResult r;
  r.branch.resize(mat.atoms());
  for (unsigned a = 0; a < mat.atoms(); ++a) {
    const Element atom = Element{1} << a;
    std::vector<std::size_t> phi;
    for (std::size_t n = 0; n < mat.rows(); ++n) {
      for (std::size_t m = 0; m < mat.cols(); ++m) {
        if (mat.at(n, m) & atom) {
          phi.push_back(m);
          break;
        }
      }
      if (phi.size() != n + 1) break;
    }
    if (phi.size() == mat.rows()) {
      r.value |= atom;
      r.branch[a] = std::move(phi);
    }
  }
  return r;
}

Element rhs_all_branches(const ValueMatrix& mat) {
  double count = 1;
  for (std::size_t n = 0; n < mat.rows(); ++n) count *= static_cast<double>(mat.cols());
  if (count > double(1 << 24)) throw std::length_error("too many branches to walk");
  Element join = 0;
  std::vector<std::size_t> phi(mat.rows(), 0);
  while (true) {
    Element meet = mat.top();
    for (std::size_t k = 0; k < mat.rows(); ++k) meet &= mat.at(k, phi[k]);
    join |= meet;
    std::size_t k = 0;
    while (k < mat.rows() && ++phi[k] == mat.cols()) phi[k++] = 0;
    if (k == mat.rows()) break;
  }
  return join;
}

IndexTree index_tree(const trees::FiniteTree& T, std::size_t rows, std::size_t cols) {
  IndexTree t;
  if (T.size() == 0) return t;
  if (!T.contains({})) throw std::invalid_argument("tree lacks its root");
  std::map<trees::NatSeq, std::uint32_t> index;
  // std::set orders a sequence after all its prefixes.
  for (const auto& s : T.nodes()) {
    if (s.size() > rows) {
      throw IndexOutOfRange("node " + trees::to_string(s) + " is longer than " + std::to_string(rows));
    }
    IndexTree::Node node;
    if (!s.empty()) {
      const Natural& last = s.back();
      if (!last.fits_u64() || last.to_u64() >= cols) {
        throw IndexOutOfRange("node " + trees::to_string(s) + " uses a column past " + std::to_string(cols - 1));
      }
      const auto parent = index.find(trees::NatSeq(s.begin(), s.end() - 1));
      if (parent == index.end()) throw std::invalid_argument("node " + trees::to_string(s) + " has no parent");
      node = {parent->second, static_cast<std::uint32_t>(last.to_u64()), static_cast<std::uint32_t>(s.size())};
    }
    index.emplace(s, static_cast<std::uint32_t>(t.nodes.size()));
    t.nodes.push_back(node);
  }
  std::vector<int> children(t.nodes.size(), 0);
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    if (++children[t.nodes[i].parent] > 2) throw std::invalid_argument("a node has more than two successors");
  }
  return t;
}

trees::FiniteTree finite_tree(const IndexTree& t) {
  trees::FiniteTree T;
  std::vector<trees::NatSeq> seqs(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (i > 0) {
      seqs[i] = seqs[t.nodes[i].parent];
      seqs[i].push_back(Natural(t.nodes[i].col));
    }
    T.insert(seqs[i]);
  }
  return T;
}

Element tree_value(const ValueMatrix& mat, const IndexTree& t) {
  if (t.nodes.empty()) return 0;
  std::vector<Element> meet(t.nodes.size());
  std::vector<Element> level(mat.rows(), 0);
  meet[0] = mat.top();
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const auto& node = t.nodes[i];
    if (node.parent >= i || node.depth == 0 || node.depth > mat.rows() || node.col >= mat.cols() ||
        node.depth != t.nodes[node.parent].depth + 1) {
      throw IndexOutOfRange("tree node " + std::to_string(i) + " does not fit the matrix");
    }
    meet[i] = meet[node.parent] & mat.at(node.depth - 1, node.col);
    level[node.depth - 1] |= meet[i];
  }
  Element value = mat.top();
  for (const auto e : level) value &= e;
  return value;
}

Element rhs_tree_lower_bound(const ValueMatrix& mat, const std::vector<IndexTree>& sample) {
  Element join = 0;
  for (const auto& t : sample) join |= tree_value(mat, t);
  return join;
}

Element rhs_tree_lower_bound(const ValueMatrix& mat, const std::vector<trees::FiniteTree>& sample) {
  Element join = 0;
  for (const auto& T : sample) join |= tree_value(mat, index_tree(T, mat.rows(), mat.cols()));
  return join;
}

ValueMatrix random_matrix(std::mt19937_64& rng, unsigned atoms, std::size_t rows, std::size_t cols) {
  ValueMatrix mat(atoms, rows, cols);
  // Sparse, even and dense entries, so that both sides are often strictly
  // between ⊥ and ⊤.
  std::uniform_int_distribution<int> density(0, 2);
  for (std::size_t n = 0; n < rows; ++n) {
    for (std::size_t m = 0; m < cols; ++m) {
      Element e = rng() & mat.top();
      switch (density(rng)) {
        case 0: e &= rng(); break;
        case 2: e |= rng() & mat.top(); break;
        default: break;
      }
      mat.set(n, m, e);
    }
  }
  return mat;
}

IndexTree random_binary_tree(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  IndexTree t;
  t.nodes.push_back({});
  std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(cols - 1));
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto depth = t.nodes[i].depth;
    if (depth == rows) continue;
    const auto first = col(rng);
    t.nodes.push_back({static_cast<std::uint32_t>(i), first, depth + 1});
    if (cols > 1 && (rng() & 1U)) {
      auto second = col(rng);
      while (second == first) second = col(rng);
      t.nodes.push_back({static_cast<std::uint32_t>(i), second, depth + 1});
    }
  }
  return t;
}

Report check_identity(const ValueMatrix& mat, const std::vector<IndexTree>& sample) {
  Report report{"boolean identity on " + std::to_string(mat.atoms()) + " atoms, " + std::to_string(mat.rows()) +
                "x" + std::to_string(mat.cols())};
  const Element left = lhs(mat);
  const auto right = rhs_atomwise(mat);
  report.note("lhs = " + element_to_string(left) + ", rhs = " + element_to_string(right.value));
  for (unsigned a = 0; a < mat.atoms(); ++a) {
    if (right.branch[a].empty()) continue;
    std::string phi;
    for (const auto m : right.branch[a]) phi += (phi.empty() ? "" : ",") + std::to_string(m);
    report.note("atom " + std::to_string(a) + " via branch (" + phi + ")");
  }
  if (left != right.value) report.fail("lhs " + element_to_string(left) + " differs from rhs " + element_to_string(right.value));
  if (!sample.empty()) {
    const Element lower = rhs_tree_lower_bound(mat, sample);
    if (lower & ~left) {
      report.fail("tree bound " + element_to_string(lower) + " over " + std::to_string(sample.size()) +
                  " trees exceeds lhs " + element_to_string(left));
    }
  }
  return report;
}

std::uint64_t splitmix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

bool run_case(const FuzzConfig& c, std::size_t i, ValueMatrix* mat_out) {
  std::mt19937_64 rng(splitmix(c.seed, i));
  ValueMatrix mat = random_matrix(rng, c.atoms, c.rows, c.cols);
  const Element left = lhs(mat);
  bool ok = left == rhs_atomwise(mat).value;
  for (std::size_t t = 0; ok && t < c.trees; ++t) {
    ok = (tree_value(mat, random_binary_tree(rng, c.rows, c.cols)) & ~left) == 0;
  }
  if (mat_out) *mat_out = std::move(mat);
  return ok;
}

std::vector<IndexTree> case_trees(const FuzzConfig& c, std::size_t i) {
  std::mt19937_64 rng(splitmix(c.seed, i));
  random_matrix(rng, c.atoms, c.rows, c.cols);
  std::vector<IndexTree> sample;
  for (std::size_t t = 0; t < c.trees; ++t) sample.push_back(random_binary_tree(rng, c.rows, c.cols));
  return sample;
}

FuzzOutcome collect(const FuzzConfig& c, const std::vector<char>& ok) {
  FuzzOutcome out;
  out.cases = c.cases;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (ok[i]) continue;
    ++out.failures;
    if (out.first_failure) continue;
    out.first_failure = i;
    ValueMatrix mat(c.atoms, c.rows, c.cols);
    run_case(c, i, &mat);
    out.counterexample_report = check_identity(mat, case_trees(c, i));
    out.counterexample = std::move(mat);
  }
  return out;
}

// Rejects bad shapes up front, before any worker thread can throw.
void check_config(const FuzzConfig& c) { ValueMatrix(c.atoms, c.rows, c.cols); }

}  // namespace

FuzzOutcome fuzz_identity_serial(const FuzzConfig& config) {
  check_config(config);
  std::vector<char> ok(config.cases);
  for (std::size_t i = 0; i < config.cases; ++i) ok[i] = run_case(config, i, nullptr);
  return collect(config, ok);
}

FuzzOutcome fuzz_identity_parallel(const FuzzConfig& config) {
  check_config(config);
  std::vector<char> ok(config.cases);
  const auto count = static_cast<std::int64_t>(config.cases);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t i = 0; i < count; ++i) ok[i] = run_case(config, static_cast<std::size_t>(i), nullptr);
  return collect(config, ok);
}

}  // namespace radoloc::boolean
