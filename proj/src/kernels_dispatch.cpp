#include "betaweight/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "betaweight/common.hpp"

namespace bw::kernels {

namespace scalar {
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void scal(double, double*, std::size_t);
void matvec(const double*, const double*, double*, std::size_t, std::size_t);
void matvec_t_acc(const double*, const double*, double*, std::size_t, std::size_t);
void rank1_acc(double*, const double*, const double*, double, std::size_t, std::size_t);
void vexp(const double*, double*, std::size_t);
void vtanh(const double*, double*, std::size_t);
void vsigmoid(const double*, double*, std::size_t);
void vsoftplus(const double*, double*, std::size_t);
double bernoulli_ce(const double*, const double*, std::size_t);
void bernoulli_ce_grad(const double*, const double*, double*, std::size_t);
double sqdist(const double*, const double*, std::size_t);
}  // namespace scalar

#if defined(BW_HAVE_AVX2)
namespace avx2 {
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void scal(double, double*, std::size_t);
void matvec(const double*, const double*, double*, std::size_t, std::size_t);
void matvec_t_acc(const double*, const double*, double*, std::size_t, std::size_t);
void rank1_acc(double*, const double*, const double*, double, std::size_t, std::size_t);
void vexp(const double*, double*, std::size_t);
void vtanh(const double*, double*, std::size_t);
void vsigmoid(const double*, double*, std::size_t);
void vsoftplus(const double*, double*, std::size_t);
double bernoulli_ce(const double*, const double*, std::size_t);
void bernoulli_ce_grad(const double*, const double*, double*, std::size_t);
double sqdist(const double*, const double*, std::size_t);
}  // namespace avx2
#endif

namespace {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    void (*matvec)(const double*, const double*, double*, std::size_t, std::size_t);
    void (*matvec_t_acc)(const double*, const double*, double*, std::size_t, std::size_t);
    void (*rank1_acc)(double*, const double*, const double*, double, std::size_t, std::size_t);
    void (*vexp)(const double*, double*, std::size_t);
    void (*vtanh)(const double*, double*, std::size_t);
    void (*vsigmoid)(const double*, double*, std::size_t);
    void (*vsoftplus)(const double*, double*, std::size_t);
    double (*bernoulli_ce)(const double*, const double*, std::size_t);
    void (*bernoulli_ce_grad)(const double*, const double*, double*, std::size_t);
    double (*sqdist)(const double*, const double*, std::size_t);
};

constexpr Vtable kScalarVt = {
    scalar::dot, scalar::axpy, scalar::scal, scalar::matvec, scalar::matvec_t_acc,
    scalar::rank1_acc, scalar::vexp, scalar::vtanh, scalar::vsigmoid,
    scalar::vsoftplus, scalar::bernoulli_ce, scalar::bernoulli_ce_grad,
    scalar::sqdist,
};

#if defined(BW_HAVE_AVX2)
constexpr Vtable kAvx2Vt = {
    avx2::dot, avx2::axpy, avx2::scal, avx2::matvec, avx2::matvec_t_acc,
    avx2::rank1_acc, avx2::vexp, avx2::vtanh, avx2::vsigmoid,
    avx2::vsoftplus, avx2::bernoulli_ce, avx2::bernoulli_ce_grad,
    avx2::sqdist,
};
#endif

bool cpu_has_avx2() {
#if defined(BW_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Dispatch {
    const Vtable* vt = &kScalarVt;
    Backend backend = Backend::Scalar;

    Dispatch() {
        const char* env = std::getenv("BW_KERNELS");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) {
            return;
        }
#if defined(BW_HAVE_AVX2)
        if (cpu_has_avx2() &&
            (env == nullptr || std::strcmp(env, "avx2") == 0)) {
            vt = &kAvx2Vt;
            backend = Backend::Avx2;
        }
#endif
    }
};

Dispatch g_dispatch;

}  // namespace

Backend active_backend() { return g_dispatch.backend; }

bool backend_available(Backend b) {
    if (b == Backend::Scalar) return true;
    return cpu_has_avx2();
}

void force_backend(Backend b) {
    if (!backend_available(b)) {
        throw ConfigError("kernel backend '" + backend_name(b) +
                          "' not available on this CPU/build");
    }
    if (b == Backend::Scalar) {
        g_dispatch.vt = &kScalarVt;
    } else {
#if defined(BW_HAVE_AVX2)
        g_dispatch.vt = &kAvx2Vt;
#endif
    }
    g_dispatch.backend = b;
}

std::string backend_name(Backend b) {
    return b == Backend::Scalar ? "scalar" : "avx2";
}

double dot(const double* x, const double* y, std::size_t n) {
    return g_dispatch.vt->dot(x, y, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) {
    g_dispatch.vt->axpy(a, x, y, n);
}
void scal(double a, double* x, std::size_t n) { g_dispatch.vt->scal(a, x, n); }
void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
    g_dispatch.vt->matvec(a, x, y, rows, cols);
}
void matvec_t_acc(const double* a, const double* x, double* y, std::size_t rows,
                  std::size_t cols) {
    g_dispatch.vt->matvec_t_acc(a, x, y, rows, cols);
}
void rank1_acc(double* a, const double* x, const double* y, double c,
               std::size_t rows, std::size_t cols) {
    g_dispatch.vt->rank1_acc(a, x, y, c, rows, cols);
}
void vexp(const double* x, double* y, std::size_t n) { g_dispatch.vt->vexp(x, y, n); }
void vtanh(const double* x, double* y, std::size_t n) { g_dispatch.vt->vtanh(x, y, n); }
void vsigmoid(const double* x, double* y, std::size_t n) {
    g_dispatch.vt->vsigmoid(x, y, n);
}
void vsoftplus(const double* x, double* y, std::size_t n) {
    g_dispatch.vt->vsoftplus(x, y, n);
}
double bernoulli_ce(const double* logits, const double* targets, std::size_t n) {
    return g_dispatch.vt->bernoulli_ce(logits, targets, n);
}
void bernoulli_ce_grad(const double* logits, const double* targets, double* g,
                       std::size_t n) {
    g_dispatch.vt->bernoulli_ce_grad(logits, targets, g, n);
}
double sqdist(const double* x, const double* y, std::size_t n) {
    return g_dispatch.vt->sqdist(x, y, n);
}

}  // namespace bw::kernels
