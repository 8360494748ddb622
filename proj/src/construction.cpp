#include "radoloc/construction.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "radoloc/rado.hpp"

namespace radoloc::construction {

namespace {

using trees::lex_level;

std::string node(const BinSeq& s) { return s.to_string(); }

std::string set_str(const VertexSet& K) {
  std::string out = "{";
  for (std::size_t i = 0; i < K.size(); ++i) out += (i ? "," : "") + K[i].to_string();
  return out + "}";
}

// Runs `fn`, turning any exception into a violation of `what`.
void guarded(Report& report, const std::string& what, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report.fail(what + ": " + e.what());
  }
}

VertexSet with_d(const ConstructionState& s, const BinSeq& sigma, std::size_t n) {
  VertexSet K = s.K_phi.at(sigma);
  if (sigma.back() == 1) K = set_insert(std::move(K), s.d.at(n));
  return K;
}

NatSeq F_sequence(const ConstructionState& s, const NameModel& nm, const BinSeq& phi, std::uint8_t j,
                  std::size_t length) {
  const VertexSet& K = s.K_phi.at(phi.child(j));
  NatSeq out;
  for (std::size_t k = 0; k < length; ++k) out.push_back(nm.value(k, s.lab->trace(K, k)));
  return out;
}

}  // namespace

Undecided::Undecided(std::size_t n_, VertexSet K_, std::size_t bound)
    : std::runtime_error("undecided: the name model does not split below (n=" + std::to_string(n_) +
                         ", K=" + set_str(K_) + ") within " + std::to_string(bound) + " levels"),
      n(n_),
      K(std::move(K_)) {}

Split find_split(std::size_t n, const VertexSet& K_in, const NameModel& nm, const Labeling& lab, std::size_t bound) {
  const VertexSet K = make_set(K_in);
  std::vector<Vertex> candidates;
  for (std::size_t n1 = n + 1; n1 <= n + bound; ++n1) {
    candidates.push_back(lab.q(n1 - 1, K));
    if (candidates.size() > 16) break;
    const Natural base = nm.value(n1, K);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
      VertexSet K2 = K;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if ((mask >> i) & 1U) K2 = set_insert(std::move(K2), candidates[i]);
      }
      if (nm.value(n1, K2) != base) return {n1, K, std::move(K2)};
    }
  }
  throw Undecided(n, K, bound);
}

Vertex ConstructionState::f_value(const BinSeq& phi) const {
  if (phi.empty()) return lab->q(0, {});
  return lab->q(n_phi.at(phi.parent()), K_phi.at(phi));
}

ConstructionState run_construction(std::shared_ptr<Labeling> lab, std::shared_ptr<const NameModel> nm,
                                   std::size_t depth, std::size_t split_bound) {
  ConstructionState s;
  s.lab = std::move(lab);
  s.names = std::move(nm);
  s.depth = depth;
  const Labeling& L = *s.lab;
  const NameModel& names = *s.names;

  const Vertex root = L.q(0, {});
  s.lambda.push_back({root});
  s.f.push_back({{BinSeq(), root}});
  s.l.push_back(0);
  s.K_phi[BinSeq()] = {};

  for (std::size_t n = 0; n < depth; ++n) {
    // Build stage n + 1.
    const auto level = lex_level(n);
    if (n == 0) {
      const Split sp = find_split(0, {}, names, L, split_bound);
      s.n_phi[BinSeq()] = sp.n1;
      s.K_phi[BinSeq::parse("0")] = sp.left;
      s.K_phi[BinSeq::parse("1")] = sp.right;
    } else {
      const BinSeq psi = trees::delta_element(n + 1);
      const BinSeq distinguished = psi.prefix(n);
      std::size_t n_star = 0;
      for (const auto& sigma : level) {
        if (sigma == distinguished) continue;
        const Split sp = find_split(s.l[n], with_d(s, sigma, n), names, L, split_bound);
        s.n_phi[sigma] = sp.n1;
        s.K_phi[sigma.child(0)] = sp.left;
        s.K_phi[sigma.child(1)] = sp.right;
        n_star = std::max(n_star, sp.n1);
      }
      const Split sp = find_split(n_star, with_d(s, distinguished, n), names, L, split_bound);
      for (const auto& sigma : level) {
        if (sigma != distinguished && s.n_phi.at(sigma) >= sp.n1) {
          throw std::logic_error("stage " + std::to_string(n + 1) + ": n_" + node(sigma) +
                                 " is not below the distinguished node's");
        }
      }
      s.n_phi[distinguished] = sp.n1;
      s.K_phi[distinguished.child(0)] = sp.left;
      s.K_phi[distinguished.child(1)] = sp.right;
    }

    const BinSeq psi = trees::delta_element(n + 1);
    s.l.push_back(s.n_phi.at(psi.prefix(n)) + 1);
    auto f_next = s.f.back();
    std::vector<Vertex> lam;
    for (const auto& sigma : lex_level(n + 1)) {
      const Vertex v = s.f_value(sigma);
      f_next[sigma] = v;
      lam.push_back(v);
    }
    s.f.push_back(std::move(f_next));
    s.lambda.push_back(std::move(lam));
    const Vertex d = s.f.back().at(psi);
    s.d[n + 1] = d;

    std::vector<Vertex> frontier;
    for (const auto& sigma : level) {
      frontier.push_back(L.q(s.l[n + 1], s.K_phi.at(sigma.child(0))));
      frontier.push_back(L.q(s.l[n + 1], set_insert(s.K_phi.at(sigma.child(1)), d)));
    }
    s.phi[n + 1] = std::move(frontier);
  }
  return s;
}

Report verify_state(const ConstructionState& s) {
  Report report{"conditions (i)-(x) at depth " + std::to_string(s.depth)};
  const Labeling& L = *s.lab;
  const NameModel& nm = *s.names;
  auto lt = [&](const Vertex& a, const Vertex& b) { return a != b && tree_leq(a, b, L); };

  guarded(report, "base objects", [&] {
    if (s.lambda.size() != s.depth + 1 || s.f.size() != s.depth + 1 || s.l.size() != s.depth + 1) {
      report.fail("tables do not cover stages 0.." + std::to_string(s.depth));
    }
    if (s.lambda.at(0) != std::vector<Vertex>{L.q(0, {})}) report.fail("Λ_0 is not {q(0,∅)}");
    if (s.l.at(0) != 0) report.fail("l_0 is not 0");
    if (!s.K_phi.at(BinSeq()).empty()) report.fail("K_ε is not empty");
  });

  for (std::size_t n = 1; n <= s.depth; ++n) {
    const std::string at = " at stage " + std::to_string(n);
    const BinSeq base = trees::delta_element(n).prefix(n - 1);
    const bool children_built = n + 1 <= s.depth;
    for (const auto& phi : lex_level(n - 1)) {
      const std::string where = " for φ=" + node(phi) + at;
      guarded(report, "(i)" + where, [&] {
        const std::size_t nphi = s.n_phi.at(phi);
        for (std::uint8_t j = 0; j < 2; ++j) {
          for (const auto& k : s.K_phi.at(phi.child(j))) {
            if (L.tag_of(k).level >= nphi) {
              report.fail("(i) K_" + node(phi.child(j)) + " contains " + k.to_string() + " outside ∪_{i<n_φ}L_i" + at);
            }
          }
        }
      });
      guarded(report, "(ii)" + where, [&] {
        if (s.n_phi.at(phi) > s.n_phi.at(base)) report.fail("(ii) n_φ > n_{ψ_n↾(n-1)}" + where);
        if (s.l.at(n) != s.n_phi.at(base) + 1) report.fail("(ii) l_n ≠ n_{ψ_n↾(n-1)} + 1" + at);
        if (children_built) {
          for (std::uint8_t j = 0; j < 2; ++j) {
            if (!(s.l.at(n) < s.n_phi.at(phi.child(j)))) report.fail("(ii) l_n ≥ n_" + node(phi.child(j)) + at);
          }
        }
      });
      if (children_built) {
        guarded(report, "(iii)" + where, [&] {
          const BinSeq p0 = phi.child(0);
          const Vertex top = L.q(s.l.at(n), s.K_phi.at(p0));
          for (std::uint8_t j = 0; j < 2; ++j) {
            if (!lt(L.q(s.n_phi.at(p0), s.K_phi.at(p0.child(j))), top)) {
              report.fail("(iii) f(" + node(p0.child(j)) + ") is not strictly below the Φ_n element of " + node(p0) + at);
            }
          }
        });
        guarded(report, "(iv)" + where, [&] {
          const BinSeq p1 = phi.child(1);
          const Vertex top = L.q(s.l.at(n), set_insert(s.K_phi.at(p1), s.d.at(n)));
          for (std::uint8_t j = 0; j < 2; ++j) {
            if (!lt(L.q(s.n_phi.at(p1), s.K_phi.at(p1.child(j))), top)) {
              report.fail("(iv) f(" + node(p1.child(j)) + ") is not strictly below the Φ_n element of " + node(p1) + at);
            }
          }
        });
      }
      guarded(report, "(v)" + where, [&] {
        const std::size_t nphi = s.n_phi.at(phi);
        if (nm.value(nphi, s.K_phi.at(phi.child(0))) == nm.value(nphi, s.K_phi.at(phi.child(1)))) {
          report.fail("(v) m^{n_φ}_{K_φ0} = m^{n_φ}_{K_φ1}" + where);
        }
      });
    }
    guarded(report, "(ix)" + at, [&] {
      if (s.d.at(n) != s.f.at(n).at(trees::delta_element(n))) report.fail("(ix) d_n ≠ f_n(ψ_n)" + at);
    });
    guarded(report, "(x)" + at, [&] {
      std::vector<Vertex> expected;
      for (const auto& phi : lex_level(n - 1)) {
        expected.push_back(L.q(s.l.at(n), s.K_phi.at(phi.child(0))));
        expected.push_back(L.q(s.l.at(n), set_insert(s.K_phi.at(phi.child(1)), s.d.at(n))));
      }
      if (s.phi.at(n) != expected) report.fail("(x) Φ_n differs from its definition" + at);
    });
  }

  for (std::size_t n = 0; n <= s.depth; ++n) {
    const std::string at = " at stage " + std::to_string(n);
    guarded(report, "(vi)" + at, [&] {
      std::vector<Vertex> expected;
      for (const auto& sigma : lex_level(n)) expected.push_back(s.f_value(sigma));
      if (s.lambda.at(n) != expected) report.fail("(vi) Λ_n differs from its definition" + at);
    });
    guarded(report, "(vii)" + at, [&] {
      const auto& fn = s.f.at(n);
      std::vector<BinSeq> domain;
      std::set<Vertex> image;
      for (std::size_t len = 0; len <= n; ++len) {
        for (const auto& sigma : lex_level(len)) {
          domain.push_back(sigma);
          auto it = fn.find(sigma);
          if (it == fn.end()) {
            report.fail("(vii) f_n undefined on " + node(sigma) + at);
            return;
          }
          if (it->second != s.f_value(sigma)) report.fail("(vii) f_n(" + node(sigma) + ") differs from its formula" + at);
          if (!image.insert(it->second).second) report.fail("(vii) f_n is not injective" + at);
        }
      }
      if (fn.size() != domain.size()) report.fail("(vii) f_n is defined outside ^{≤n}2" + at);
      std::set<Vertex> lam;
      for (std::size_t i = 0; i <= n; ++i) lam.insert(s.lambda.at(i).begin(), s.lambda.at(i).end());
      if (lam != image) report.fail("(vii) f_n is not onto ∪_{i≤n}Λ_i" + at);
      for (const auto& a : domain) {
        for (const auto& b : domain) {
          if (b.is_prefix_of(a) != tree_leq(fn.at(a), fn.at(b), L)) {
            report.fail("(vii) order mismatch between " + node(a) + " and " + node(b) + at);
          }
        }
      }
    });
    guarded(report, "(viii)" + at, [&] {
      for (std::size_t m = 0; m < n; ++m) {
        for (const auto& [sigma, v] : s.f.at(m)) {
          auto it = s.f.at(n).find(sigma);
          if (it == s.f.at(n).end() || it->second != v) {
            report.fail("(viii) f_" + std::to_string(m) + " ⊄ f_" + std::to_string(n) + " at " + node(sigma));
          }
        }
      }
    });
  }
  return report;
}

Report check_adjacency_laws(const ConstructionState& s) {
  Report report{"adjacency laws at depth " + std::to_string(s.depth)};
  const Labeling& L = *s.lab;
  std::size_t checked = 0;
  for (std::size_t n = 1; n + 1 <= s.depth; ++n) {
    for (const auto& psi : lex_level(n - 1)) {
      for (std::uint8_t k = 0; k < 2; ++k) {
        const BinSeq pk = psi.child(k);
        for (std::uint8_t j = 0; j < 2; ++j) {
          guarded(report, "law for d_n at " + node(pk.child(j)), [&] {
            const Vertex v = L.q(s.n_phi.at(pk), s.K_phi.at(pk.child(j)));
            ++checked;
            if (rado::adjacent(v, s.d.at(n)) != (k == 1)) {
              report.fail("f(" + node(pk.child(j)) + ") ~ d_" + std::to_string(n) + " should be " +
                          (k ? "true" : "false"));
            }
          });
        }
      }
    }
  }
  for (std::size_t len = 1; len + 1 <= s.depth; ++len) {
    for (const auto& phi : lex_level(len)) {
      for (std::uint8_t j = 0; j < 2; ++j) {
        guarded(report, "law for d_{k+1} at " + node(phi.child(j)), [&] {
          const Vertex v = L.q(s.n_phi.at(phi), s.K_phi.at(phi.child(j)));
          for (std::size_t k = 0; k < len; ++k) {
            ++checked;
            if (rado::adjacent(v, s.d.at(k + 1)) != (phi[k] == 1)) {
              report.fail("f(" + node(phi.child(j)) + ") ~ d_" + std::to_string(k + 1) + " should be " +
                          (phi[k] ? "true" : "false"));
            }
          }
        });
      }
    }
  }
  report.note(std::to_string(checked) + " instances checked");
  return report;
}

DExtraction extract_D(const ConstructionState& s) {
  DExtraction out;
  out.report.name = "D extraction at depth " + std::to_string(s.depth);
  std::set<Vertex> seen;
  for (std::size_t n = 1; n <= s.depth; ++n) {
    guarded(out.report, "d_" + std::to_string(n), [&] {
      const Vertex& d = s.d.at(n);
      out.D.push_back(d);
      if (!seen.insert(d).second) out.report.fail("d_" + std::to_string(n) + " repeats an earlier d");
      if (d != s.f.at(s.depth).at(trees::delta_element(n))) {
        out.report.fail("d_" + std::to_string(n) + " ≠ f(ψ_" + std::to_string(n) + ")");
      }
    });
  }
  std::size_t uncovered = 0;
  for (const auto& [sigma, v] : s.f.empty() ? std::map<BinSeq, Vertex>{} : s.f.back()) {
    guarded(out.report, "density at " + node(sigma), [&] {
      const auto r = trees::least_delta_extension(sigma, s.depth);
      if (!r) {
        ++uncovered;
        out.report.note("no ψ_r with r ≤ " + std::to_string(s.depth) + " extends " + node(sigma));
        return;
      }
      if (!tree_leq(s.d.at(*r), v, *s.lab)) {
        out.report.fail("d_" + std::to_string(*r) + " is not below f(" + node(sigma) + ")");
      }
    });
  }
  out.report.note(std::to_string(out.D.size()) + " vertices, " + std::to_string(uncovered) + " nodes uncovered");
  return out;
}

ConeWitness cone_witness_in_D(const ConstructionState& s, const VertexSet& H_in, const VertexSet& K_in) {
  const VertexSet H = make_set(H_in);
  const VertexSet K = make_set(K_in);
  if (!set_includes(H, K)) throw std::invalid_argument("K ⊄ H");
  std::map<Vertex, std::size_t> index;
  for (const auto& [n, d] : s.d) index.emplace(d, n);
  std::size_t m = 0;
  for (const auto& h : H) {
    auto it = index.find(h);
    if (it == index.end()) throw std::invalid_argument("vertex " + h.to_string() + " is not in D");
    m = std::max(m, it->second);
  }
  std::vector<std::uint8_t> bits(m, 0);
  for (const auto& k : K) bits[index.at(k) - 1] = 1;
  ConeWitness w;
  w.phi = BinSeq(bits);
  if (m + 1 > s.depth) {
    throw DepthInsufficient("φ⌢0 = " + w.phi.child(0).to_string() + " needs depth " + std::to_string(m + 1) +
                            ", state has " + std::to_string(s.depth));
  }
  const rado::Cone cone(H, K);
  w.q = s.f_value(w.phi.child(0));
  w.vertex = w.q;
  w.certificate.name = "cone witness for " + cone.to_string();
  if (!rado::cone_member(w.q, cone)) w.certificate.fail("q = f(" + node(w.phi.child(0)) + ") is not in the cone");
  const std::size_t nphi = s.n_phi.at(w.phi);
  for (const auto& h : H) {
    if (s.lab->tag_of(h).level >= nphi) w.certificate.fail("H is not inside ∪_{i<n_φ}L_i");
  }
  for (const auto& [r, d] : s.d) {
    if (tree_leq(d, w.q, *s.lab)) {
      w.r = r;
      w.vertex = d;
      if (!rado::cone_member(d, cone)) w.certificate.fail("d_" + std::to_string(r) + " ≤_L q is not in the cone");
      w.certificate.note("d_" + std::to_string(r) + " ≤_L q");
      break;
    }
  }
  if (!w.r) w.certificate.note("no built d_r below q; q itself is returned");
  return w;
}

Report check_antichain(const ConstructionState& s, std::size_t n) {
  Report report{"antichain Λ_" + std::to_string(n)};
  if (n > s.depth) throw std::invalid_argument("antichain level beyond the built depth");
  const Labeling& L = *s.lab;
  const auto& level = s.lambda.at(n);
  std::vector<Tag> tags;
  for (const auto& v : level) tags.push_back(L.tag_of(v));
  for (std::size_t a = 0; a < level.size(); ++a) {
    for (std::size_t b = a + 1; b < level.size(); ++b) {
      if (labeled_cones_intersect(tags[a], tags[b], L)) {
        report.fail("cones of " + level[a].to_string() + " and " + level[b].to_string() + " meet");
      }
    }
  }
  std::size_t residue = 0;
  for (std::size_t i = n + 1; i <= s.depth; ++i) {
    for (const auto& v : s.lambda.at(i)) {
      ++residue;
      std::size_t hits = 0;
      for (const auto& t : tags) {
        bool in = false;
        try {
          in = L.in_cone(v, t.level, t.K);
        } catch (const LevelUnavailable&) {
          in = tree_leq(v, L.q(t.level, t.K), L);
        }
        hits += in ? 1 : 0;
      }
      if (hits != 1) {
        report.fail("vertex of Λ_" + std::to_string(i) + " lies in " + std::to_string(hits) + " cones of Λ_" +
                    std::to_string(n));
      }
    }
  }
  report.note(std::to_string(level.size()) + " cones, " + std::to_string(residue) + " deeper vertices placed");
  return report;
}

FEmbedding embed_F(const ConstructionState& s) {
  FEmbedding out;
  out.report.name = "embedding F at depth " + std::to_string(s.depth);
  const Labeling& L = *s.lab;
  const NameModel& nm = *s.names;
  std::vector<NatSeq> image;
  std::map<NatSeq, Vertex> inverse;
  auto add = [&](const Vertex& v, NatSeq seq) {
    auto [it, fresh] = inverse.emplace(seq, v);
    if (!fresh && it->second != v) out.report.fail("F is not injective at " + v.to_string());
    image.push_back(seq);
    out.F[v] = std::move(seq);
  };
  add(L.q(0, {}), {});
  for (const auto& [phi, nphi] : s.n_phi) {
    for (std::uint8_t j = 0; j < 2; ++j) {
      guarded(out.report, "F at " + node(phi.child(j)), [&] {
        NatSeq seq = F_sequence(s, nm, phi, j, nphi + 1);
        if (seq.size() != nphi + 1) out.report.fail("F(f(" + node(phi.child(j)) + ")) has the wrong length");
        add(s.f_value(phi.child(j)), std::move(seq));
      });
    }
  }
  for (const auto& [u, fu] : out.F) {
    for (const auto& [v, fv] : out.F) {
      if (tree_leq(u, v, L) != trees::is_prefix(fv, fu)) {
        out.report.fail("F does not match ≤_L between " + u.to_string() + " and " + v.to_string());
      }
    }
  }
  out.T = trees::upward_closure(image);
  if (!trees::check_binary(out.T)) out.report.fail("T is not binary");
  out.report.note(std::to_string(out.F.size()) + " vertices, T has " + std::to_string(out.T.size()) + " nodes");
  return out;
}

std::optional<std::size_t> localize_stage(const ConstructionState& s, std::size_t n) {
  for (std::size_t n0 = 1; n0 <= s.depth; ++n0) {
    if (n < s.l.at(n0 - 1)) return n0;
  }
  return std::nullopt;
}

std::vector<std::size_t> admissible_localize_levels(const ConstructionState& s) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; localize_stage(s, n); ++n) out.push_back(n);
  return out;
}

Report localize_check(const ConstructionState& s, const FiniteTree& T, const NameModel& nm, std::size_t n) {
  Report report{"localization of the first " + std::to_string(n) + " values"};
  if (n == 0) {
    if (!T.contains({})) report.fail("T lacks the empty sequence");
    return report;
  }
  const auto n0 = localize_stage(s, n);
  if (!n0) {
    throw DepthInsufficient("no built stage n_0 with " + std::to_string(n) + " < l_{n_0-1}");
  }
  for (const auto& phi : lex_level(*n0 - 1)) {
    const std::size_t nphi = s.n_phi.at(phi);
    if (n > nphi) report.fail("n exceeds n_" + node(phi));
    for (std::uint8_t j = 0; j < 2; ++j) {
      guarded(report, "node " + node(phi.child(j)), [&] {
        const NatSeq prefix = F_sequence(s, nm, phi, j, n);
        const NatSeq full = F_sequence(s, nm, phi, j, nphi + 1);
        if (!T.contains(prefix)) report.fail("value prefix of " + node(phi.child(j)) + " is not a node of T");
        if (!trees::is_prefix(prefix, full)) report.fail("value prefix of " + node(phi.child(j)) + " is not a prefix of F");
      });
    }
  }
  report.note("stage n_0 = " + std::to_string(*n0) + ", " + std::to_string(std::size_t{2} << (*n0 - 1)) +
              " antichain members");
  return report;
}

nlohmann::json state_to_json(const ConstructionState& s, const FiniteTree* T) {
  using nlohmann::json;
  json stages = json::array();
  for (std::size_t n = 0; n <= s.depth; ++n) {
    json st{{"n", n}, {"l", s.l.at(n)}, {"lambda", rado::set_to_json(s.lambda.at(n))}};
    if (n > 0) {
      st["d"] = rado::natural_to_json(s.d.at(n));
      st["Phi"] = rado::set_to_json(s.phi.at(n));
    }
    json table = json::array();
    for (const auto& [sigma, v] : s.f.at(n)) table.push_back({{"phi", sigma.key()}, {"v", rado::natural_to_json(v)}});
    st["f"] = std::move(table);
    stages.push_back(std::move(st));
  }
  json nphi = json::array();
  for (const auto& [sigma, n] : s.n_phi) nphi.push_back({{"phi", sigma.key()}, {"n", n}});
  json kphi = json::array();
  for (const auto& [sigma, K] : s.K_phi) kphi.push_back({{"phi", sigma.key()}, {"K", rado::set_to_json(K)}});
  json j{{"format", "radoloc.construction/1"},
         {"depth", s.depth},
         {"name_model", s.names->selector()},
         {"labeling", s.lab->to_json()},
         {"stages", std::move(stages)},
         {"n_phi", std::move(nphi)},
         {"K_phi", std::move(kphi)}};
  if (T) j["T"] = trees::tree_to_json(*T);
  return j;
}

LoadedState state_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "radoloc.construction/1") {
    throw std::runtime_error("not a construction state (format tag radoloc.construction/1 missing)");
  }
  LoadedState out;
  ConstructionState& s = out.state;
  try {
    const auto& labj = j.at("labeling");
    s.lab = Labeling::build(copy_from_json(labj.at("copy")));
    std::vector<LabelRecord> records;
    for (const auto& r : labj.at("records")) {
      records.push_back({r.at("n").get<std::size_t>(), rado::set_from_json(r.at("K")),
                         rado::natural_from_json(r.at("q"))});
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const LabelRecord& a, const LabelRecord& b) { return a.n < b.n; });
    for (const auto& r : records) {
      if (s.lab->q(r.n, r.K) != r.q) {
        throw std::runtime_error("recorded q(" + std::to_string(r.n) + "," + set_str(r.K) +
                                 ") disagrees with the labeling");
      }
    }
    s.names = name_model_from_selector(j.at("name_model").get<std::string>());
    s.depth = j.at("depth").get<std::size_t>();
    for (const auto& st : j.at("stages")) {
      const auto n = st.at("n").get<std::size_t>();
      if (n != s.lambda.size()) throw std::runtime_error("stages out of order");
      s.l.push_back(st.at("l").get<std::size_t>());
      std::vector<Vertex> lam;
      for (const auto& v : st.at("lambda")) lam.push_back(rado::natural_from_json(v));
      s.lambda.push_back(std::move(lam));
      if (n > 0) {
        s.d[n] = rado::natural_from_json(st.at("d"));
        std::vector<Vertex> frontier;
        for (const auto& v : st.at("Phi")) frontier.push_back(rado::natural_from_json(v));
        s.phi[n] = std::move(frontier);
      }
      std::map<BinSeq, Vertex> table;
      for (const auto& e : st.at("f")) {
        table[BinSeq::parse(e.at("phi").get<std::string>())] = rado::natural_from_json(e.at("v"));
      }
      s.f.push_back(std::move(table));
    }
    for (const auto& e : j.at("n_phi")) s.n_phi[BinSeq::parse(e.at("phi").get<std::string>())] = e.at("n").get<std::size_t>();
    for (const auto& e : j.at("K_phi")) s.K_phi[BinSeq::parse(e.at("phi").get<std::string>())] = rado::set_from_json(e.at("K"));
    if (j.contains("T")) out.T = trees::tree_from_json(j.at("T"));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed construction state: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed construction state: ") + e.what());
  }
  return out;
}

}  // namespace radoloc::construction
