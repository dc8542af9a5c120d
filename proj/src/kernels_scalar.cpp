#include "cavq/kernels.hpp"

namespace cavq::kern::detail {

namespace {

void s_axpy(cd alpha, const cd* x, cd* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cd s_dotc(const cd* x, const cd* y, std::size_t n) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void s_scal(cd alpha, cd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double s_nrm2sq(const cd* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

void s_matmul(const cd* a, std::size_t lda, const cd* b, std::size_t ldb,
              cd* c, std::size_t ldc, std::size_t n, std::size_t k, std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        cd* ci = c + i * ldc;
        for (std::size_t j = 0; j < m; ++j) ci[j] = cd{0.0, 0.0};
        const cd* ai = a + i * lda;
        for (std::size_t p = 0; p < k; ++p) {
            const cd aip = ai[p];
            if (aip == cd{0.0, 0.0}) continue;
            const cd* bp = b + p * ldb;
            for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
        }
    }
}

void s_matvec(const cd* a, std::size_t lda, const cd* x, cd* y,
              std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const cd* ai = a + i * lda;
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols; ++j) acc += ai[j] * x[j];
        y[i] = acc;
    }
}

void s_rank1_update(cd* a, std::size_t lda, cd alpha, const cd* x, const cd* y,
                    std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const cd s = alpha * x[i];
        cd* ai = a + i * lda;
        for (std::size_t j = 0; j < cols; ++j) ai[j] += s * std::conj(y[j]);
    }
}

void s_drot(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{s_axpy, s_dotc, s_scal, s_nrm2sq,
                               s_matmul, s_matvec, s_rank1_update, s_drot};
    return t;
}

}  // namespace cavq::kern::detail
