#pragma once

// Finite-difference weights on arbitrary nodes (Fornberg's recursion) and
// uniform-grid derivative helpers used for v-direction stencils.

#include <vector>

namespace conemc {

// weights[m][i]: coefficient of f(nodes[i]) in the approximation of the m-th
// derivative at x0, for m = 0..max_order. Exact for polynomials of degree
// < nodes.size().
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& nodes,
                                            int max_order);

// m-th derivative (m in {1,2}) of uniformly spaced samples with spacing h,
// accuracy order `acc`; centered stencils in the interior, one-sided at the
// ends. Requires f.size() >= acc + m.
std::vector<double> fd_derivative_uniform(const std::vector<double>& f, double h, int m, int acc);

// Derivative at a single index using the same stencil policy.
double fd_derivative_at(const std::vector<double>& f, double h, int m, int acc, int index);

}  // namespace conemc
