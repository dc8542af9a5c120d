#include "cavq/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cavq::kern {

namespace {

Backend detect() {
#ifdef CAVQ_HAVE_AVX2
    if (const char* env = std::getenv("CAVQ_KERNELS")) {
        const std::string_view v{env};
        if (v == "scalar") return Backend::Scalar;
        if (v == "avx2") return Backend::Avx2;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend& current() {
    static Backend b = detect();
    return b;
}

const detail::KernelTable& table() {
#ifdef CAVQ_HAVE_AVX2
    if (current() == Backend::Avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

}  // namespace

Backend active_backend() { return current(); }

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend b) {
    if (b == Backend::Scalar) return true;
#ifdef CAVQ_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void force_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error("kernel backend not available on this host: " +
                                 std::string(backend_name(b)));
    current() = b;
}

void reset_backend() { current() = detect(); }

void axpy(cd alpha, const cd* x, cd* y, std::size_t n) { table().axpy(alpha, x, y, n); }

cd dotc(const cd* x, const cd* y, std::size_t n) { return table().dotc(x, y, n); }

void scal(cd alpha, cd* x, std::size_t n) { table().scal(alpha, x, n); }

double nrm2sq(const cd* x, std::size_t n) { return table().nrm2sq(x, n); }

void matmul(const cd* a, std::size_t lda, const cd* b, std::size_t ldb,
            cd* c, std::size_t ldc, std::size_t n, std::size_t k, std::size_t m) {
    table().matmul(a, lda, b, ldb, c, ldc, n, k, m);
}

void matvec(const cd* a, std::size_t lda, const cd* x, cd* y,
            std::size_t rows, std::size_t cols) {
    table().matvec(a, lda, x, y, rows, cols);
}

void rank1_update(cd* a, std::size_t lda, cd alpha, const cd* x, const cd* y,
                  std::size_t rows, std::size_t cols) {
    table().rank1_update(a, lda, alpha, x, y, rows, cols);
}

void drot(double* x, double* y, std::size_t n, double c, double s) {
    table().drot(x, y, n, c, s);
}

}  // namespace cavq::kern
