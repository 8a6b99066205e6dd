#include "edgecs/nn/loss.hpp"

#include <cmath>

#include "edgecs/error.hpp"

namespace edgecs::nn {

namespace {

void check_args(std::span<const double> x, std::span<const double> x_r, double delta) {
    require_size("huber residual length", x.size(), x_r.size());
    if (!(delta > 0.0)) throw InvalidArgument("huber delta must be > 0");
}

double l1_residual(std::span<const double> x, std::span<const double> x_r) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - x_r[i]);
    return s;
}

}  // namespace

double huber_loss(std::span<const double> x, std::span<const double> x_r, double delta) {
    check_args(x, x_r, delta);
    const double l1 = l1_residual(x, x_r);
    if (l1 <= delta) {
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = x[i] - x_r[i];
            sq += r * r;
        }
        return 0.5 * sq;
    }
    return delta * l1 - 0.5 * delta * delta;
}

Vector huber_grad(std::span<const double> x, std::span<const double> x_r, double delta) {
    check_args(x, x_r, delta);
    const bool quadratic = l1_residual(x, x_r) <= delta;
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = x[i] - x_r[i];
        if (quadratic) {
            g[i] = -r;
        } else {
            g[i] = r > 0.0 ? -delta : (r < 0.0 ? delta : 0.0);
        }
    }
    return g;
}

}  // namespace edgecs::nn
