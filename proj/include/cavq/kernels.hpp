#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Dense complex-double kernels used by every hot loop in the library.
// A scalar reference implementation is always available; on x86-64 an
// AVX2+FMA variant is selected at runtime when the CPU supports it.
// All matrices are row-major with an explicit leading dimension.

namespace cavq::kern {

using cd = std::complex<double>;

enum class Backend { Scalar, Avx2 };

Backend active_backend();
std::string_view backend_name(Backend b);
bool backend_available(Backend b);

// Force a specific backend (tests use this to cross-check lanes).
// Throws std::runtime_error if the backend is not available.
void force_backend(Backend b);
void reset_backend();

// y += alpha * x
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);

// sum_i conj(x[i]) * y[i]
cd dotc(const cd* x, const cd* y, std::size_t n);

// x *= alpha
void scal(cd alpha, cd* x, std::size_t n);

// sum_i |x[i]|^2
double nrm2sq(const cd* x, std::size_t n);

// C(n x m) = A(n x k) * B(k x m). C must not alias A or B.
void matmul(const cd* a, std::size_t lda, const cd* b, std::size_t ldb,
            cd* c, std::size_t ldc, std::size_t n, std::size_t k, std::size_t m);

// y(rows) = A(rows x cols) * x. y must not alias A or x.
void matvec(const cd* a, std::size_t lda, const cd* x, cd* y,
            std::size_t rows, std::size_t cols);

// A(rows x cols) += alpha * x * y^dagger
void rank1_update(cd* a, std::size_t lda, cd alpha, const cd* x, const cd* y,
                  std::size_t rows, std::size_t cols);

// Real Givens rotation applied to two real vectors:
//   x' = c*x - s*y,  y' = s*x + c*y
void drot(double* x, double* y, std::size_t n, double c, double s);

namespace detail {

struct KernelTable {
    void (*axpy)(cd, const cd*, cd*, std::size_t);
    cd (*dotc)(const cd*, const cd*, std::size_t);
    void (*scal)(cd, cd*, std::size_t);
    double (*nrm2sq)(const cd*, std::size_t);
    void (*matmul)(const cd*, std::size_t, const cd*, std::size_t, cd*, std::size_t,
                   std::size_t, std::size_t, std::size_t);
    void (*matvec)(const cd*, std::size_t, const cd*, cd*, std::size_t, std::size_t);
    void (*rank1_update)(cd*, std::size_t, cd, const cd*, const cd*, std::size_t, std::size_t);
    void (*drot)(double*, double*, std::size_t, double, double);
};

const KernelTable& scalar_table();
#ifdef CAVQ_HAVE_AVX2
const KernelTable& avx2_table();
#endif

}  // namespace detail

}  // namespace cavq::kern
