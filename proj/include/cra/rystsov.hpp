#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "cra/cyclic_group.hpp"
#include "cra/dfa.hpp"
#include "cra/errors.hpp"
#include "cra/standardizer.hpp"

namespace cra {

// Difference set D_1, its subgroup H_1 = <h1_gen>, and the shape of the
// Rystsov graph, which is the circulant digraph with edges (q, q + d), d in D_1.
struct RystsovAnalysis {
  std::size_t n = 0;
  StateSet d1;
  std::size_t h1_gen = 0;
  bool strongly_connected = false;
  std::size_t scc_count = 0;

  // Closure tree rooted at dupl(a). For each reached d: parent[d] and whether
  // the edge was q -> q.a (false) or q -> (q + r).a (true).
  State root = 0;
  State r = 0;
  std::vector<State> parent;
  std::vector<std::uint8_t> via_shift;

  // Word w with excl(w) = {0} and dupl(w) = {d}: a followed by the tree path.
  Word witness(State d) const {
    if (!d1.contains(d)) throw std::out_of_range("state " + std::to_string(d) + " is not in D_1");
    std::vector<std::uint8_t> steps;
    for (State x = d; x != root; x = parent[x]) steps.push_back(via_shift[x]);
    Word w;
    w.push_back(Letter::A);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (*it)
        for (State i = 0; i < r; ++i) w.push_back(Letter::B);
      w.push_back(Letter::A);
    }
    return w;
  }

  std::map<State, Word> witnesses() const {
    std::map<State, Word> out;
    d1.for_each([&](State d) { out.emplace(d, witness(d)); });
    return out;
  }
};

// D_1 = { dupl(a).v : v in {a, b^r a}* }, by BFS from dupl(a).
inline RystsovAnalysis difference_set(const StandardizedDfa& sdfa) {
  const std::size_t n = sdfa.size();
  RystsovAnalysis res;
  res.n = n;
  res.d1 = StateSet(n);
  res.root = sdfa.dupl_a();
  res.r = sdfa.r();
  res.parent.assign(n, static_cast<State>(n));
  res.via_shift.assign(n, 0);

  std::deque<State> queue{res.root};
  res.d1.insert(res.root);
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    const State next[2] = {sdfa.a(q), sdfa.a(static_cast<State>((q + res.r) % n))};
    for (int i = 0; i < 2; ++i) {
      const State p = next[i];
      if (!res.d1.contains(p)) {
        res.d1.insert(p);
        res.parent[p] = q;
        res.via_shift[p] = static_cast<std::uint8_t>(i);
        queue.push_back(p);
      }
    }
  }
  if (res.d1.contains(0)) throw InternalError("0 entered the difference set");

  res.h1_gen = subgroup_generator(res.d1, n);
  res.strongly_connected = res.h1_gen == 1;
  res.scc_count = res.h1_gen;  // index of <g> in Z_n
  return res;
}

using Edge = std::pair<State, State>;

// All edges (q, q + d mod n), q in Z_n, d in D_1; n * |D_1| of them.
inline std::vector<Edge> gamma1_edges(const RystsovAnalysis& analysis) {
  const std::size_t n = analysis.n;
  const auto diffs = analysis.d1.elements();
  std::vector<Edge> edges;
  edges.reserve(n * diffs.size());
  for (State q = 0; q < n; ++q)
    for (State d : diffs) edges.emplace_back(q, static_cast<State>((q + d) % n));
  return edges;
}

// <r> is contained in D_1 u {0}, which is contained in H_1 and is a union of
// cosets of <r>. Holds for every standardized automaton.
inline bool coset_structure_check(const StandardizedDfa& sdfa, const RystsovAnalysis& analysis) {
  const std::size_t n = sdfa.size();
  StateSet d0 = analysis.d1;
  d0.insert(0);
  const std::size_t r_gen = std::gcd(static_cast<std::size_t>(sdfa.r()), n);
  for (std::size_t x = 0; x < n; x += r_gen)
    if (!d0.contains(static_cast<State>(x))) return false;
  if (!subset_of_subgroup(d0, analysis.h1_gen)) return false;
  return is_union_of_cosets(d0, sdfa.r());
}

inline void write_dot(const RystsovAnalysis& analysis, std::ostream& os) {
  const std::size_t n = analysis.n;
  const std::size_t g = analysis.h1_gen;
  os << "digraph rystsov {\n";
  for (std::size_t t = 0; t < g; ++t) {
    os << "  subgraph cluster_" << t << " {\n";
    os << "    label=\"" << t << " + <" << g << ">\";\n";
    for (std::size_t q = t; q < n; q += g) os << "    " << q << ";\n";
    os << "  }\n";
  }
  for (const auto& [q, p] : gamma1_edges(analysis)) os << "  " << q << " -> " << p << ";\n";
  os << "}\n";
}

inline void export_dot(const RystsovAnalysis& analysis, const std::filesystem::path& path) {
  if (path.empty()) throw std::invalid_argument("DOT output path is empty");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_dot(analysis, out);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace cra
