#include "cavq/kernels.hpp"

#include <immintrin.h>

// AVX2+FMA kernels for interleaved complex<double>. One ymm register holds
// two complex values. Complex multiply uses the movedup/permute/fmaddsub
// pattern; remainders fall back to scalar tails.

namespace cavq::kern::detail {

namespace {

// returns a*b for two packed complex pairs
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d ar = _mm256_movedup_pd(a);           // [ar0, ar0, ar1, ar1]
    const __m256d ai = _mm256_permute_pd(a, 0xF);      // [ai0, ai0, ai1, ai1]
    const __m256d bs = _mm256_permute_pd(b, 0x5);      // [bi0, br0, bi1, br1]
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// returns acc + s*b where s is a broadcast scalar (sr, si)
inline __m256d cfma(__m256d sr, __m256d si, __m256d b, __m256d acc) {
    const __m256d bs = _mm256_permute_pd(b, 0x5);
    const __m256d p = _mm256_fmaddsub_pd(sr, b, _mm256_mul_pd(si, bs));
    return _mm256_add_pd(acc, p);
}

inline cd hsum(__m256d v) {
    // v = [re0, im0, re1, im1] -> (re0+re1, im0+im1)
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return cd{out[0], out[1]};
}

void v_axpy(cd alpha, const cd* x, cd* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, cfma(ar, ai, xv, yv));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

cd v_dotc(const cd* x, const cd* y, std::size_t n) {
    // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xr = _mm256_movedup_pd(xv);
        const __m256d xi = _mm256_permute_pd(xv, 0xF);
        const __m256d ys = _mm256_permute_pd(yv, 0x5);
        // even lane: xr*yr + xi*yi ; odd lane: xr*yi - xi*yr
        const __m256d p = _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, ys));
        acc = _mm256_add_pd(acc, p);
    }
    cd out = hsum(acc);
    for (; i < n; ++i) out += std::conj(x[i]) * y[i];
    return out;
}

void v_scal(cd alpha, cd* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    double* xp = reinterpret_cast<double*>(x);
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

double v_nrm2sq(const cd* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* xp = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double out[4];
    _mm256_store_pd(out, acc);
    double s = out[0] + out[1] + out[2] + out[3];
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void v_matmul(const cd* a, std::size_t lda, const cd* b, std::size_t ldb,
              cd* c, std::size_t ldc, std::size_t n, std::size_t k, std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        cd* ci = c + i * ldc;
        for (std::size_t j = 0; j < m; ++j) ci[j] = cd{0.0, 0.0};
        const cd* ai = a + i * lda;
        std::size_t p = 0;
        // two k-steps per pass so each C row is streamed half as often
        for (; p + 2 <= k; p += 2) {
            const cd a0 = ai[p];
            const cd a1 = ai[p + 1];
            const __m256d a0r = _mm256_set1_pd(a0.real());
            const __m256d a0i = _mm256_set1_pd(a0.imag());
            const __m256d a1r = _mm256_set1_pd(a1.real());
            const __m256d a1i = _mm256_set1_pd(a1.imag());
            const double* b0 = reinterpret_cast<const double*>(b + p * ldb);
            const double* b1 = reinterpret_cast<const double*>(b + (p + 1) * ldb);
            double* cp = reinterpret_cast<double*>(ci);
            std::size_t j = 0;
            for (; j + 2 <= m; j += 2) {
                __m256d cv = _mm256_loadu_pd(cp + 2 * j);
                cv = cfma(a0r, a0i, _mm256_loadu_pd(b0 + 2 * j), cv);
                cv = cfma(a1r, a1i, _mm256_loadu_pd(b1 + 2 * j), cv);
                _mm256_storeu_pd(cp + 2 * j, cv);
            }
            for (; j < m; ++j)
                ci[j] += a0 * b[p * ldb + j] + a1 * b[(p + 1) * ldb + j];
        }
        for (; p < k; ++p) {
            const cd ap = ai[p];
            const __m256d apr = _mm256_set1_pd(ap.real());
            const __m256d api = _mm256_set1_pd(ap.imag());
            const double* bp = reinterpret_cast<const double*>(b + p * ldb);
            double* cp = reinterpret_cast<double*>(ci);
            std::size_t j = 0;
            for (; j + 2 <= m; j += 2) {
                __m256d cv = _mm256_loadu_pd(cp + 2 * j);
                cv = cfma(apr, api, _mm256_loadu_pd(bp + 2 * j), cv);
                _mm256_storeu_pd(cp + 2 * j, cv);
            }
            for (; j < m; ++j) ci[j] += ap * b[p * ldb + j];
        }
    }
}

void v_matvec(const cd* a, std::size_t lda, const cd* x, cd* y,
              std::size_t rows, std::size_t cols) {
    const double* xp = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < rows; ++i) {
        const cd* ai = a + i * lda;
        const double* ap = reinterpret_cast<const double*>(ai);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= cols; j += 2) {
            acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(ap + 2 * j),
                                          _mm256_loadu_pd(xp + 2 * j)));
        }
        cd out = hsum(acc);
        for (; j < cols; ++j) out += ai[j] * x[j];
        y[i] = out;
    }
}

void v_rank1_update(cd* a, std::size_t lda, cd alpha, const cd* x, const cd* y,
                    std::size_t rows, std::size_t cols) {
    // conj(y) on the fly by flipping the sign of imaginary lanes
    const __m256d conj_mask = _mm256_castsi256_pd(
        _mm256_set_epi64x(0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
    const double* yp = reinterpret_cast<const double*>(y);
    for (std::size_t i = 0; i < rows; ++i) {
        const cd s = alpha * x[i];
        const __m256d sr = _mm256_set1_pd(s.real());
        const __m256d si = _mm256_set1_pd(s.imag());
        cd* ai = a + i * lda;
        double* ap = reinterpret_cast<double*>(ai);
        std::size_t j = 0;
        for (; j + 2 <= cols; j += 2) {
            const __m256d yv = _mm256_xor_pd(_mm256_loadu_pd(yp + 2 * j), conj_mask);
            const __m256d av = _mm256_loadu_pd(ap + 2 * j);
            _mm256_storeu_pd(ap + 2 * j, cfma(sr, si, yv, av));
        }
        for (; j < cols; ++j) ai[j] += s * std::conj(y[j]);
    }
}

void v_drot(double* x, double* y, std::size_t n, double c, double s) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmsub_pd(cv, xv, _mm256_mul_pd(sv, yv)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(sv, xv, _mm256_mul_pd(cv, yv)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable t{v_axpy, v_dotc, v_scal, v_nrm2sq,
                               v_matmul, v_matvec, v_rank1_update, v_drot};
    return t;
}

}  // namespace cavq::kern::detail
