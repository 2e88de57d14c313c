#pragma once

#include <cstddef>
#include <string>

// Data-parallel arithmetic kernels behind the numeric hot loops.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant. The implementation is chosen once at
// startup by CPU probe; tests force either path via force_backend(). The
// two paths agree to floating-point reassociation tolerance, which the
// kernel equivalence suite pins down.

namespace bw::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_available(Backend b);

// Selects a specific backend; throws bw::ConfigError if unavailable.
// Also honours the BW_KERNELS env var ("scalar"/"avx2") at startup.
void force_backend(Backend b);

std::string backend_name(Backend b);

// ---- BLAS-1/2 style --------------------------------------------------

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// x[i] *= a
void scal(double a, double* x, std::size_t n);

// y = A x, A row-major (rows x cols)
void matvec(const double* a, const double* x, double* y,
            std::size_t rows, std::size_t cols);

// y += A^T x, A row-major (rows x cols), x has rows elements, y has cols
void matvec_t_acc(const double* a, const double* x, double* y,
                  std::size_t rows, std::size_t cols);

// A += c * x y^T, A row-major (rows x cols)
void rank1_acc(double* a, const double* x, const double* y, double c,
               std::size_t rows, std::size_t cols);

// ---- element-wise transcendentals ------------------------------------

// y[i] = exp(x[i])
void vexp(const double* x, double* y, std::size_t n);

// y[i] = tanh(x[i])
void vtanh(const double* x, double* y, std::size_t n);

// y[i] = 1 / (1 + exp(-x[i]))
void vsigmoid(const double* x, double* y, std::size_t n);

// y[i] = log(1 + exp(x[i])), overflow-safe
void vsoftplus(const double* x, double* y, std::size_t n);

// ---- fused loss helpers ----------------------------------------------

// Bernoulli cross-entropy between logits l and targets t in [0,1]:
//   sum_i softplus(l[i]) - t[i]*l[i]
double bernoulli_ce(const double* logits, const double* targets, std::size_t n);

// g[i] = sigmoid(l[i]) - t[i]   (gradient of bernoulli_ce wrt logits)
void bernoulli_ce_grad(const double* logits, const double* targets, double* g,
                       std::size_t n);

// squared Euclidean distance sum_i (x[i]-y[i])^2
double sqdist(const double* x, const double* y, std::size_t n);

}  // namespace bw::kernels
