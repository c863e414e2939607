#include "conemc/fd.hpp"

#include <algorithm>
#include <stdexcept>

namespace conemc {

std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& nodes,
                                            int max_order) {
    const int nn = static_cast<int>(nodes.size());
    if (nn == 0 || max_order < 0 || max_order >= nn) {
        throw std::invalid_argument("fd_weights: need more nodes than derivative order");
    }
    // Fornberg, Math. Comp. 51 (1988); c[i][k] = weight of node i for order k.
    std::vector<std::vector<double>> c(static_cast<size_t>(nn),
                                       std::vector<double>(static_cast<size_t>(max_order + 1), 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < nn; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[static_cast<size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[static_cast<size_t>(i)] - nodes[static_cast<size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                        c1 * (k * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] -
                              c5 * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k)]) /
                        c2;
                }
                c[static_cast<size_t>(i)][0] = -c1 * c5 * c[static_cast<size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                    (c4 * c[static_cast<size_t>(j)][static_cast<size_t>(k)] -
                     k * c[static_cast<size_t>(j)][static_cast<size_t>(k - 1)]) /
                    c3;
            }
            c[static_cast<size_t>(j)][0] = c4 * c[static_cast<size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    // transpose into [order][node]
    std::vector<std::vector<double>> w(static_cast<size_t>(max_order + 1),
                                       std::vector<double>(static_cast<size_t>(nn), 0.0));
    for (int i = 0; i < nn; ++i) {
        for (int k = 0; k <= max_order; ++k) {
            w[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                c[static_cast<size_t>(i)][static_cast<size_t>(k)];
        }
    }
    return w;
}

namespace {

int stencil_width(int m, int acc) { return acc + m; }

std::vector<double> window_weights(int m, int width, int rel_index, double h) {
    std::vector<double> nodes(static_cast<size_t>(width));
    for (int i = 0; i < width; ++i) nodes[static_cast<size_t>(i)] = (i - rel_index) * h;
    return fd_weights(0.0, nodes, m)[static_cast<size_t>(m)];
}

}  // namespace

double fd_derivative_at(const std::vector<double>& f, double h, int m, int acc, int index) {
    const int nf = static_cast<int>(f.size());
    const int width = stencil_width(m, acc);
    if (nf < width) {
        throw std::invalid_argument("fd_derivative_at: too few samples for stencil");
    }
    int start = std::clamp(index - width / 2, 0, nf - width);
    const std::vector<double> w = window_weights(m, width, index - start, h);
    double acc_val = 0.0;
    for (int i = 0; i < width; ++i) {
        acc_val += w[static_cast<size_t>(i)] * f[static_cast<size_t>(start + i)];
    }
    return acc_val;
}

std::vector<double> fd_derivative_uniform(const std::vector<double>& f, double h, int m, int acc) {
    const int nf = static_cast<int>(f.size());
    const int width = stencil_width(m, acc);
    if (nf < width) {
        throw std::invalid_argument("fd_derivative_uniform: too few samples for stencil");
    }
    std::vector<double> out(static_cast<size_t>(nf));
    // one weight table per window offset; the centered interior table dominates
    std::vector<std::vector<double>> cache(static_cast<size_t>(width));
    for (int idx = 0; idx < nf; ++idx) {
        const int start = std::clamp(idx - width / 2, 0, nf - width);
        const int rel = idx - start;
        auto& w = cache[static_cast<size_t>(rel)];
        if (w.empty()) w = window_weights(m, width, rel, h);
        double s = 0.0;
        for (int i = 0; i < width; ++i) {
            s += w[static_cast<size_t>(i)] * f[static_cast<size_t>(start + i)];
        }
        out[static_cast<size_t>(idx)] = s;
    }
    return out;
}

}  // namespace conemc
