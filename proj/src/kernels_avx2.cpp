#include "betaweight/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <immintrin.h>

// AVX2+FMA variants. Compiled with -mavx2 -mfma; only reachable when the
// dispatcher has verified CPU support at runtime.
//
// exp/log1p use the usual Cody-Waite range reduction plus polynomial core,
// accurate to a few ulp; the equivalence suite pins the tolerance against
// the libm-backed scalar reference.

namespace bw::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

// exp(x) for one vector lane: clamp, k = round(x*log2e), Cody-Waite
// subtraction, degree-13 Taylor core on |r| <= ln2/2, two-step 2^k scale
// so subnormal results round correctly.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e   = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi  = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo  = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d hi_clip = _mm256_set1_pd(710.0);
    const __m256d lo_clip = _mm256_set1_pd(-750.0);

    // operand order keeps NaN inputs flowing through to the result
    __m256d xc = _mm256_max_pd(lo_clip, x);
    xc = _mm256_min_pd(hi_clip, xc);

    __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, xc);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    __m128i ki = _mm256_cvtpd_epi32(k);
    __m128i k1 = _mm_srai_epi32(ki, 1);
    __m128i k2 = _mm_sub_epi32(ki, k1);
    const __m256i bias = _mm256_set1_epi64x(1023);
    __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(
        _mm256_add_epi64(_mm256_cvtepi32_epi64(k1), bias), 52));
    __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(
        _mm256_add_epi64(_mm256_cvtepi32_epi64(k2), bias), 52));
    return _mm256_mul_pd(_mm256_mul_pd(p, s1), s2);
}

// log1p(z) for z in [0,1]: pick t = z/(2+z) or t = (z-1)/(z+3) (halved
// argument) so the subtraction never cancels, then 2*atanh(t) by an odd
// series in t^2 (|t| <= 0.172).
inline __m256d log1p_unit_pd(__m256d z) {
    const __m256d sqrt2m1 = _mm256_set1_pd(0.41421356237309504880);
    const __m256d ln2     = _mm256_set1_pd(0.69314718055994530942);
    const __m256d one     = _mm256_set1_pd(1.0);
    const __m256d two     = _mm256_set1_pd(2.0);
    const __m256d three   = _mm256_set1_pd(3.0);

    __m256d big = _mm256_cmp_pd(z, sqrt2m1, _CMP_GT_OQ);
    __m256d t_small = _mm256_div_pd(z, _mm256_add_pd(two, z));
    __m256d t_big = _mm256_div_pd(_mm256_sub_pd(z, one), _mm256_add_pd(z, three));
    __m256d t = _mm256_blendv_pd(t_small, t_big, big);

    __m256d u = _mm256_mul_pd(t, t);
    __m256d s = _mm256_set1_pd(1.0 / 23.0);
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 21.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 19.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 17.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 15.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 13.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 11.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 9.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 7.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 5.0));
    s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(1.0 / 3.0));
    s = _mm256_fmadd_pd(s, u, one);

    __m256d res = _mm256_mul_pd(_mm256_mul_pd(two, t), s);
    return _mm256_add_pd(res, _mm256_and_pd(big, ln2));
}

inline __m256d abs_pd(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline __m256d sigmoid_pd(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), abs_pd(x)));
    __m256d den = _mm256_add_pd(one, e);
    __m256d pos = _mm256_div_pd(one, den);
    __m256d neg = _mm256_div_pd(e, den);
    __m256d is_neg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
    return _mm256_blendv_pd(pos, neg, is_neg);
}

inline __m256d softplus_pd(__m256d x) {
    __m256d e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), abs_pd(x)));
    __m256d relu = _mm256_max_pd(x, _mm256_setzero_pd());
    return _mm256_add_pd(log1p_unit_pd(e), relu);
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    double s = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i + 4),
                                                    _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
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
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, exp_pd(_mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] = std::exp(x[i]);
}

void vtanh(const double* x, double* y, std::size_t n) {
    // |x| >= 0.03: 1 - 2/(e^{2|x|}+1); below that the subtraction would
    // eat relative precision, so switch to the odd Taylor series.
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d cut = _mm256_set1_pd(0.03);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        __m256d av = abs_pd(v);
        __m256d e = exp_pd(_mm256_mul_pd(two, av));
        __m256d big = _mm256_sub_pd(one, _mm256_div_pd(two, _mm256_add_pd(e, one)));

        __m256d u = _mm256_mul_pd(v, v);
        __m256d s = _mm256_set1_pd(62.0 / 2835.0);
        s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(-17.0 / 315.0));
        s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(2.0 / 15.0));
        s = _mm256_fmadd_pd(s, u, _mm256_set1_pd(-1.0 / 3.0));
        s = _mm256_fmadd_pd(s, u, one);
        __m256d small = _mm256_mul_pd(av, s);

        __m256d sel = _mm256_cmp_pd(av, cut, _CMP_LT_OQ);
        __m256d mag = _mm256_blendv_pd(big, small, sel);
        __m256d sign = _mm256_and_pd(v, _mm256_set1_pd(-0.0));
        _mm256_storeu_pd(y + i, _mm256_or_pd(mag, sign));
    }
    for (; i < n; ++i) y[i] = std::tanh(x[i]);
}

void vsigmoid(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, sigmoid_pd(_mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) {
        const double e = std::exp(-std::fabs(x[i]));
        y[i] = x[i] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    }
}

void vsoftplus(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, softplus_pd(_mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) {
        y[i] = std::log1p(std::exp(-std::fabs(x[i]))) + std::fmax(x[i], 0.0);
    }
}

double bernoulli_ce(const double* logits, const double* targets, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d l = _mm256_loadu_pd(logits + i);
        __m256d t = _mm256_loadu_pd(targets + i);
        acc = _mm256_add_pd(acc, _mm256_fnmadd_pd(t, l, softplus_pd(l)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double l = logits[i];
        s += std::log1p(std::exp(-std::fabs(l))) + std::fmax(l, 0.0) - targets[i] * l;
    }
    return s;
}

void bernoulli_ce_grad(const double* logits, const double* targets, double* g,
                       std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d l = _mm256_loadu_pd(logits + i);
        __m256d t = _mm256_loadu_pd(targets + i);
        _mm256_storeu_pd(g + i, _mm256_sub_pd(sigmoid_pd(l), t));
    }
    for (; i < n; ++i) {
        const double e = std::exp(-std::fabs(logits[i]));
        const double sig = logits[i] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
        g[i] = sig - targets[i];
    }
}

double sqdist(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

}  // namespace bw::kernels::avx2
