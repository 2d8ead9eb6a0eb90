#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>

#include <hjsc/hjsc.hpp>

namespace hjsc::test {

// Solved catalog cases are shared between test cases of one binary.
// tol = 0 keeps the solver default.
inline const Solution& solved(const std::string& id, double spacing, double tol = 0.0) {
  static std::map<std::tuple<std::string, double, double>, std::unique_ptr<Solution>> cache;
  auto& slot = cache[{id, spacing, tol}];
  if (!slot) {
    const ExampleCase c = *find_case(id);
    const Grid grid = build_grid(c.domain, spacing);
    SolverConfig cfg;
    if (tol > 0.0) cfg.tol = tol;
    slot = std::make_unique<Solution>(solve(c.hamiltonian, c.cost, grid, cfg));
  }
  return *slot;
}

inline ExampleCase example(const std::string& id) { return *find_case(id); }

inline Vec at(double x) { return {x, 0.0}; }

inline std::shared_ptr<const Grid> grid_ptr(const Domain& d, double spacing) {
  return std::make_shared<const Grid>(d, spacing);
}

}  // namespace hjsc::test
