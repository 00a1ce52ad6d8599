#pragma once

// Test-only graph utilities, independent of the library's own reasoning about
// cosets: plain Tarjan over an explicit edge list.

#include <algorithm>
#include <functional>
#include <vector>

#include "cra/rystsov.hpp"

namespace testsupport {

// Component id per vertex.
inline std::vector<std::size_t> tarjan_scc(std::size_t n, const std::vector<cra::Edge>& edges) {
  std::vector<std::vector<cra::State>> adj(n);
  for (const auto& [u, v] : edges) adj[u].push_back(v);
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<cra::State> stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0, comps = 0;

  // Iterative to stay safe on long cycles.
  for (cra::State root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<std::pair<cra::State, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        const cra::State w = adj[v][i++];
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        cra::State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const cra::State done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

inline std::size_t component_count(const std::vector<std::size_t>& comp) {
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

// True iff q and p share a component exactly when q = p mod g.
inline bool components_are_cosets(const std::vector<std::size_t>& comp, std::size_t g) {
  const std::size_t n = comp.size();
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p)
      if ((comp[q] == comp[p]) != (q % g == p % g)) return false;
  return true;
}

}  // namespace testsupport
