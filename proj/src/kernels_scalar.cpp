#include "betaweight/kernels.hpp"

#include <algorithm>
#include <cmath>

// Reference implementations. Plain loops, libm transcendentals; the ground
// truth the vector variants are tested against.

namespace bw::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void matvec(const double* a, const double* x, double* y,
            std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

void matvec_t_acc(const double* a, const double* x, double* y,
                  std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) axpy(x[r], a + r * cols, y, cols);
}

void rank1_acc(double* a, const double* x, const double* y, double c,
               std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) axpy(c * x[r], y, a + r * cols, cols);
}

void vexp(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void vtanh(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

void vsigmoid(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        // evaluate via exp(-|x|) so the argument never overflows
        const double e = std::exp(-std::fabs(x[i]));
        y[i] = x[i] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    }
}

void vsoftplus(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::log1p(std::exp(-std::fabs(x[i]))) + std::max(x[i], 0.0);
    }
}

double bernoulli_ce(const double* logits, const double* targets, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = logits[i];
        s += std::log1p(std::exp(-std::fabs(l))) + std::max(l, 0.0) - targets[i] * l;
    }
    return s;
}

void bernoulli_ce_grad(const double* logits, const double* targets, double* g,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-std::fabs(logits[i]));
        const double sig = logits[i] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
        g[i] = sig - targets[i];
    }
}

double sqdist(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

}  // namespace bw::kernels::scalar
