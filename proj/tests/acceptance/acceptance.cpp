// One line per acceptance criterion: [PASS] or [FAIL], the criterion, its
// runtime against the limit, and the first few problems on failure.

#include <algorithm>
#include <bit>
#include <bitset>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles/embeddings.hpp"
#include "oracles/small_graph.hpp"
#include "oracles/tree_enumeration.hpp"
#include "radoloc/boolean_identity.hpp"
#include "radoloc/construction.hpp"
#include "radoloc/labeling.hpp"
#include "radoloc/rado.hpp"
#include "radoloc/trees.hpp"

using namespace radoloc;

namespace {

struct Problems {
  std::vector<std::string> list;
  std::size_t count = 0;
  void add(std::string what) {
    if (list.size() < 5) list.push_back(std::move(what));
    ++count;
  }
  void expect(bool ok, const std::function<std::string()>& what) {
    if (!ok) add(what());
  }
  void absorb(const Report& r) {
    for (const auto& v : r.violations) add(r.name + ": " + v);
  }
};

VertexSet to_set(const std::vector<std::uint64_t>& xs) {
  VertexSet s;
  for (auto x : xs) s.emplace_back(x);
  return make_set(std::move(s));
}

std::vector<std::uint64_t> bits_of(std::uint32_t mask) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < 32; ++i) {
    if ((mask >> i) & 1U) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 1. Cone calculus against brute force.
//
// Membership of v ∉ U in a cone with H ⊆ U depends only on v's adjacency
// profile on U, so per union U the brute-force side runs over the profiles
// that window vertices actually realize. The window [0, 2^17) realizes every
// profile on U ⊆ [0, 16) and holds every closed-form witness.
void cone_calculus(Problems& p) {
  constexpr std::uint32_t kWindow = 1u << 17;
  std::vector<std::uint16_t> profile(kWindow);
  for (std::uint32_t v = 0; v < kWindow; ++v) {
    std::uint16_t m = 0;
    for (std::uint32_t u = 0; u < 16; ++u) m |= static_cast<std::uint16_t>(oracle::adjacent(u, v)) << u;
    profile[v] = m;
  }

  std::vector<std::uint32_t> unions;
  for (std::uint32_t U = 0; U < (1u << 16); ++U) {
    if (std::popcount(U) <= 4) unions.push_back(U);
  }
  std::size_t pairs = 0;
  for (const auto U : unions) {
    std::vector<bool> seen(1u << 16, false);
    std::vector<std::uint32_t> realized;
    for (std::uint32_t v = 0; v < kWindow; ++v) {
      if (v < 16 && ((U >> v) & 1U)) continue;
      const std::uint32_t m = profile[v] & U;
      if (!seen[m]) {
        seen[m] = true;
        realized.push_back(m);
      }
    }
    // Cones (H, K) with H ⊆ U, as mask pairs; pairs of cones whose H's cover U.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cones;
    for (std::uint32_t H = U;; H = (H - 1) & U) {
      for (std::uint32_t K = H;; K = (K - 1) & H) {
        cones.emplace_back(H, K);
        if (K == 0) break;
      }
      if (H == 0) break;
    }
    const auto member = [](std::uint32_t prof, std::pair<std::uint32_t, std::uint32_t> c) {
      return (prof & c.first) == c.second;
    };
    std::vector<rado::Cone> library;
    for (const auto& c : cones) library.emplace_back(to_set(bits_of(c.first)), to_set(bits_of(c.second)));
    for (std::size_t i = 0; i < cones.size(); ++i) {
      for (std::size_t j = 0; j < cones.size(); ++j) {
        const auto& a = cones[i];
        const auto& b = cones[j];
        if ((a.first | b.first) != U) continue;
        ++pairs;
        bool meet = false;
        bool a_in_b = true;
        for (const auto prof : realized) {
          const bool ia = member(prof, a), ib = member(prof, b);
          meet = meet || (ia && ib);
          a_in_b = a_in_b && (!ia || ib);
        }
        const rado::Cone& ca = library[i];
        const rado::Cone& cb = library[j];
        const auto where = [&] { return ca.to_string() + " vs " + cb.to_string(); };
        p.expect(rado::cones_intersect(ca, cb) == meet, [&] { return "(a) " + where(); });
        const auto c = rado::cone_intersection(ca, cb);
        p.expect(c.has_value() == meet, [&] { return "(b) existence " + where(); });
        if (c && meet) {
          bool agree = true;
          std::uint32_t cH = 0, cK = 0;
          for (const auto& h : c->H()) cH |= 1u << h.to_u64();
          for (const auto& k : c->K()) cK |= 1u << k.to_u64();
          for (const auto prof : realized) {
            agree = agree && (member(prof, {cH, cK}) == (member(prof, a) && member(prof, b)));
          }
          p.expect(agree, [&] { return "(b) " + where() + " gave " + c->to_string(); });
        }
        const bool equal = a == b;
        p.expect(rado::cone_subset(ca, cb) == a_in_b, [&] { return "(d) " + where(); });
        p.expect(rado::cone_equal(ca, cb) == equal, [&] { return "(c) " + where(); });
      }
    }
  }

  // The partition {H} ∪ {R^H_K}: exhaustive below 2^12, then above it on
  // vertices whose high part is random.
  std::mt19937_64 rng(2024);
  std::size_t classified = 0;
  for (std::uint32_t Hmask = 0; Hmask < (1u << 16); ++Hmask) {
    if (std::popcount(Hmask) > 4) continue;
    const auto Hv = bits_of(Hmask);
    const VertexSet H = to_set(Hv);
    const std::uint32_t limit = Hv.empty() ? 4 : 1u << (Hv.back() + 2);
    std::vector<std::uint32_t> vs;
    for (std::uint32_t v = 0; v < std::min(limit, 1u << 12); ++v) vs.push_back(v);
    for (int i = 0; limit > (1u << 12) && i < 64; ++i) vs.push_back(static_cast<std::uint32_t>(rng() % limit));
    for (const auto v : vs) {
      ++classified;
      const auto part = rado::classify_vertex(Natural(v), H);
      const bool in_H = v < 16 && ((Hmask >> v) & 1U);
      p.expect(part.in_H == in_H && (in_H || part.K == to_set(bits_of(profile[v] & Hmask))),
               [&] { return "partition: v=" + std::to_string(v) + " H=" + set_to_string(H); });
    }
  }

  // witness(c) ∈ c for random cones with |H| ≤ 8: word-sized ones checked by
  // the oracle, then ones with large vertices by the library.
  for (int i = 0; i < 1000; ++i) {
    const bool small = i < 500;
    std::vector<std::uint64_t> Hv, Kv;
    const std::size_t size = rng() % 9;
    for (std::size_t j = 0; j < size; ++j) Hv.push_back(small ? rng() % 63 : rng() % (std::uint64_t{1} << 40));
    std::sort(Hv.begin(), Hv.end());
    Hv.erase(std::unique(Hv.begin(), Hv.end()), Hv.end());
    for (auto h : Hv) {
      if (rng() & 1U) Kv.push_back(h);
    }
    const rado::Cone c(to_set(Hv), to_set(Kv));
    const Vertex w = rado::witness(c);
    if (small) {
      p.expect(w.fits_u64() && oracle::in_cone(w.to_u64(), Hv, Kv), [&] { return "witness of " + c.to_string(); });
    } else {
      p.expect(rado::cone_member(w, c), [&] { return "witness of " + c.to_string(); });
    }
  }
  if (pairs < 1000000) p.add("only " + std::to_string(pairs) + " cone pairs compared");
}

// ---------------------------------------------------------------------------
// 2. Labeling of the identity copy.
void labeling(Problems& p) {
  auto lab = Labeling::build(std::make_shared<WholeGraph>());
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= 3; ++n) sizes.push_back(lab->level(n).size());
  p.expect(sizes == std::vector<std::size_t>{1, 2, 8, 2048}, [] { return "level sizes"; });
  p.absorb(verify_labeling(*lab, 3));

  const auto word = oracle::least_index_labeling(3);
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto keys = lab->level_keys(n);
    for (std::size_t mask = 0; mask < keys.size(); ++mask) {
      p.expect(lab->q(n, keys[mask]) == Natural(word.levels[n][mask]),
               [&] { return "q(" + std::to_string(n) + "," + set_to_string(keys[mask]) + ") differs from search"; });
    }
  }
  auto search = Labeling::build(std::make_shared<WholeGraph>(), {.closed_form = false});
  p.expect(search->level(3) == lab->level(3), [] { return "least-index search disagrees with the formula"; });

  // Labeled cone inclusion, by brute force, against the tag form of the order.
  std::vector<std::uint64_t> tagged;
  for (std::size_t n = 0; n <= 2; ++n) {
    for (const auto& v : lab->level(n)) tagged.push_back(v.to_u64());
  }
  const auto cone_words = [&](std::uint64_t v) {
    const auto c = cone_of(Natural(v), *lab);
    std::vector<std::uint64_t> H, K;
    for (const auto& h : c.H()) H.push_back(h.to_u64());
    for (const auto& k : c.K()) K.push_back(k.to_u64());
    return std::pair{H, K};
  };
  for (const auto a : tagged) {
    for (const auto b : tagged) {
      const auto [Ha, Ka] = cone_words(a);
      const auto [Hb, Kb] = cone_words(b);
      bool subset = true;
      for (std::uint64_t v = 0; v < (1u << 12); ++v) {
        if (oracle::in_cone(v, Ha, Ka) && !oracle::in_cone(v, Hb, Kb)) subset = false;
      }
      p.expect(tree_leq(Natural(a), Natural(b), *lab) == subset,
               [&] { return "cone inclusion and tree_leq disagree on " + std::to_string(a) + ", " + std::to_string(b); });
    }
  }
}

// ---------------------------------------------------------------------------
// 3. Δ.
void delta(Problems& p) {
  std::set<std::size_t> lengths;
  std::set<std::string> elements;
  for (std::uint64_t n = 1; n <= 64; ++n) {
    const auto psi = trees::delta_element(n);
    lengths.insert(psi.size());
    elements.insert(psi.to_string());
    p.expect(psi.size() == n, [&] { return "ψ_" + std::to_string(n) + " has length " + std::to_string(psi.size()); });
  }
  p.expect(lengths.size() == 64 && *lengths.begin() == 1 && *lengths.rbegin() == 64 && elements.size() == 64,
           [] { return "lengths are not exactly 1..64"; });
  const auto by_definition = trees::delta_by_definition(12);
  for (const auto& psi : by_definition) {
    p.expect(psi == trees::delta_element(psi.size()), [&] { return "definition disagrees at " + psi.to_string(); });
  }
  p.absorb(trees::delta_density_check(3));
}

// ---------------------------------------------------------------------------
// 4. Construction to depth 4.
void construction_depth4(Problems& p) {
  using namespace construction;
  const auto build = [] {
    return run_construction(Labeling::build(std::make_shared<WholeGraph>()), encode_name_model(), 4);
  };
  const auto s = build();
  p.absorb(verify_state(s));
  p.absorb(check_adjacency_laws(s));
  for (std::size_t n = 0; n <= 4; ++n) p.absorb(check_antichain(s, n));
  p.absorb(extract_D(s).report);
  const auto F = embed_F(s);
  p.absorb(F.report);
  p.expect(trees::check_binary(F.T), [] { return "T is not binary"; });
  const auto levels = admissible_localize_levels(s);
  p.expect(!levels.empty(), [] { return "no admissible localization level"; });
  for (auto n : levels) p.absorb(localize_check(s, F.T, *s.names, n));
  try {
    run_construction(Labeling::build(std::make_shared<WholeGraph>()), constant_name_model(Natural(7)), 4);
    p.add("constant name model did not report Undecided");
  } catch (const Undecided& e) {
    p.expect(e.n == 0, [&] { return std::string("Undecided past stage 1: ") + e.what(); });
  }
  const auto again = build();
  const auto Ta = embed_F(again).T;
  p.expect(state_to_json(s, &F.T).dump() == state_to_json(again, &Ta).dump(),
           [] { return "serialized states differ between runs"; });
}

// ---------------------------------------------------------------------------
// 5. Cone witnesses inside D at depth 5.
void cone_witnesses(Problems& p) {
  using namespace construction;
  const auto s = run_construction(Labeling::build(std::make_shared<WholeGraph>()), encode_name_model(), 5);
  p.absorb(verify_state(s));
  const auto D = extract_D(s).D;
  std::size_t checked = 0;
  for (std::uint32_t hmask = 0; hmask < 16; ++hmask) {
    for (std::uint32_t kmask = hmask;; kmask = (kmask - 1) & hmask) {
      VertexSet H, K;
      for (std::size_t i = 0; i < 4; ++i) {
        if ((hmask >> i) & 1U) H.push_back(D[i]);
        if ((kmask >> i) & 1U) K.push_back(D[i]);
      }
      H = make_set(H);
      K = make_set(K);
      try {
        const auto w = cone_witness_in_D(s, H, K);
        p.absorb(w.certificate);
        p.expect(rado::cone_member(w.vertex, rado::Cone(H, K)),
                 [&] { return "witness outside R^H_K for H=" + set_to_string(H) + " K=" + set_to_string(K); });
        ++checked;
      } catch (const std::exception& e) {
        p.add(std::string("H=") + set_to_string(H) + " K=" + set_to_string(K) + ": " + e.what());
      }
      if (kmask == 0) break;
    }
  }
  p.expect(checked == 81, [&] { return std::to_string(checked) + " of 81 (H, K) pairs certified"; });
}

// ---------------------------------------------------------------------------
// 6. Upward closures of random embeddings.
void embeddings(Problems& p) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto e = oracle::random_embedding(rng, 4);
    p.expect(trees::check_binary(trees::upward_closure(oracle::image(e))),
             [&] { return "embedding " + std::to_string(i) + " closes to a non-binary tree"; });
    const auto m = oracle::three_way_mutation(rng, e, 4);
    p.expect(!trees::check_binary(trees::upward_closure(oracle::image(m))),
             [&] { return "mutation of embedding " + std::to_string(i) + " not detected"; });
  }
}

// ---------------------------------------------------------------------------
// 7. The Boolean identity.
void boolean_identity(Problems& p) {
  using namespace boolean;
  for (unsigned atoms : {1u, 2u, 3u, 8u}) {
    for (std::size_t rows = 1; rows <= 5; ++rows) {
      for (std::size_t cols = 1; cols <= 5; ++cols) {
        const FuzzConfig c{atoms, rows, cols, 1000, 1000 * atoms + 10 * rows + cols, 100};
        const auto out = fuzz_identity_parallel(c);
        p.expect(out.failures == 0, [&] {
          return std::to_string(out.failures) + " failures at atoms=" + std::to_string(atoms) + " " +
                 std::to_string(rows) + "x" + std::to_string(cols);
        });
      }
    }
  }
  for (int rows = 1; rows <= 3; ++rows) {
    for (int cols = 1; cols <= 3; ++cols) {
      const auto table = oracle::boolean_rhs_table<512>(rows, cols);
      const std::size_t slices = std::size_t{1} << (rows * cols);
      for (std::size_t lo = 0; lo < slices; ++lo) {
        for (std::size_t hi = 0; hi < slices; ++hi) {
          ValueMatrix mat(2, rows, cols);
          for (int e = 0; e < rows * cols; ++e) {
            mat.set(e / cols, e % cols, ((lo >> e) & 1U) | (((hi >> e) & 1U) << 1));
          }
          const Element expected = Element(table[lo]) | (Element(table[hi]) << 1);
          p.expect(rhs_atomwise(mat).value == expected, [&] { return "tree enumeration disagrees on\n" + matrix_to_text(mat); });
          if (hi == 0) {
            ValueMatrix one(1, rows, cols);
            for (int e = 0; e < rows * cols; ++e) one.set(e / cols, e % cols, (lo >> e) & 1U);
            p.expect(rhs_atomwise(one).value == Element(table[lo]), [&] { return "one-atom slice disagrees"; });
          }
        }
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    void (*run)(Problems&);
  };
  const Criterion criteria[] = {
      {"1 cone calculus matches brute force", 10, cone_calculus},
      {"2 identity labeling sizes, (L1)-(L4), tree order", 30, labeling},
      {"3 delta elements and density", 1, delta},
      {"4 construction to depth 4", 120, construction_depth4},
      {"5 cone witnesses in D at depth 5", 60, cone_witnesses},
      {"6 binary closures of random embeddings", 5, embeddings},
      {"7 boolean localization identity", 120, boolean_identity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Problems p;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(p);
    } catch (const std::exception& e) {
      p.add(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) p.add("took " + std::to_string(secs) + " s");
    const bool ok = p.count == 0;
    failed += !ok;
    std::printf("[%s] %s (%.2f s of %.0f s)\n", ok ? "PASS" : "FAIL", c.name, secs, c.limit_s);
    for (const auto& line : p.list) std::printf("    %s\n", line.c_str());
    if (p.count > p.list.size()) std::printf("    ... %zu problems in all\n", p.count);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
