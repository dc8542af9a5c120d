#include "cavq/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cavq/kernels.hpp"

namespace cavq {

namespace {

// Implicit-shift QL on a real symmetric tridiagonal matrix with eigenvector
// accumulation (EISPACK tql2 lineage). d holds the diagonal, e[i] the
// subdiagonal between i and i+1 (e[n-1] unused). z is n x n column-major;
// its columns are rotated in place.
void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
          std::size_t n) {
    if (n <= 1) return;
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) break;
            ++m;
        }

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 64) throw std::runtime_error("eigh: QL iteration failed to converge");

                // Wilkinson-style shift
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    // accumulate the rotation into columns i, i+1
                    kern::drot(z.data() + i * n, z.data() + (i + 1) * n, n, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace

EighResult eigh(std::span<const cd> a, std::size_t n) {
    if (n == 0) throw std::invalid_argument("eigh: empty matrix");
    if (a.size() != n * n) throw std::invalid_argument("eigh: size mismatch");

    EighResult out;
    out.n = n;
    if (n == 1) {
        out.eigenvalues = {a[0].real()};
        out.vectors = {cd{1.0, 0.0}};
        return out;
    }

    // Work on the Hermitian average to shed roundoff asymmetry.
    std::vector<cd> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i * n + j] = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));

    // Householder reduction to tridiagonal form. Unit vectors are stored per
    // step (padded with zeros up to the full length) for the backtransform.
    std::vector<cd> hh((n >= 2 ? n - 2 : 0) * n, cd{0.0, 0.0});
    std::vector<bool> hh_valid(n >= 2 ? n - 2 : 0, false);
    std::vector<cd> w(n);
    std::vector<cd> v(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        cd* u = hh.data() + k * n;  // active part u[k+1 .. n-1]
        for (std::size_t r = 0; r < m; ++r) u[k + 1 + r] = t[(k + 1 + r) * n + k];

        const double xnorm2 = kern::nrm2sq(u + k + 1, m);
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm2 <= 0.0) continue;  // column already reduced

        const cd x0 = u[k + 1];
        const cd phase = (x0 == cd{0.0, 0.0}) ? cd{1.0, 0.0} : x0 / std::abs(x0);
        const cd alpha = -phase * xnorm;

        u[k + 1] -= alpha;
        const double unorm2 = kern::nrm2sq(u + k + 1, m);
        if (unorm2 <= 0.0) continue;
        kern::scal(cd{1.0 / std::sqrt(unorm2), 0.0}, u + k + 1, m);
        hh_valid[k] = true;

        // Trailing block update: B <- B - 2 u v^dag - 2 v u^dag with
        // w = B u, v = w - (u^dag w) u.
        kern::matvec(t.data() + (k + 1) * n + (k + 1), n, u + k + 1, w.data() + k + 1, m, m);
        const cd c = kern::dotc(u + k + 1, w.data() + k + 1, m);
        for (std::size_t r = 0; r < m; ++r) v[k + 1 + r] = w[k + 1 + r] - c * u[k + 1 + r];
        kern::rank1_update(t.data() + (k + 1) * n + (k + 1), n, cd{-2.0, 0.0}, u + k + 1,
                           v.data() + k + 1, m, m);
        kern::rank1_update(t.data() + (k + 1) * n + (k + 1), n, cd{-2.0, 0.0}, v.data() + k + 1,
                           u + k + 1, m, m);

        // The pivot column collapses onto alpha.
        t[(k + 1) * n + k] = alpha;
        t[k * n + (k + 1)] = std::conj(alpha);
        for (std::size_t r = 1; r < m; ++r) {
            t[(k + 1 + r) * n + k] = cd{0.0, 0.0};
            t[k * n + (k + 1 + r)] = cd{0.0, 0.0};
        }
    }

    // Phase similarity making the subdiagonal real and nonnegative.
    std::vector<cd> ph(n);
    std::vector<double> d(n), e(n, 0.0);
    ph[0] = cd{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) d[i] = t[i * n + i].real();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const cd beta = t[(k + 1) * n + k];
        const double ab = std::abs(beta);
        e[k] = ab;
        ph[k + 1] = (ab > 0.0) ? ph[k] * (beta / ab) : ph[k];
    }

    // Real QL with accumulation.
    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;  // column-major identity
    tql2(d, e, z, n);

    // Assemble complex eigenvectors: V = (product of Householders) * D * Z.
    std::vector<cd> vec(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const cd p = ph[i];
        for (std::size_t j = 0; j < n; ++j) vec[i * n + j] = p * z[j * n + i];
    }
    std::vector<cd> trow(n);
    for (std::size_t k = n - 2; k-- > 0;) {
        if (!hh_valid[k]) continue;
        const cd* u = hh.data() + k * n;
        const std::size_t m = n - k - 1;
        // trow = u^dag M over the active rows, then M -= 2 u trow
        std::fill(trow.begin(), trow.end(), cd{0.0, 0.0});
        for (std::size_t r = 0; r < m; ++r)
            kern::axpy(std::conj(u[k + 1 + r]), vec.data() + (k + 1 + r) * n, trow.data(), n);
        for (std::size_t r = 0; r < m; ++r)
            kern::axpy(-2.0 * u[k + 1 + r], trow.data(), vec.data() + (k + 1 + r) * n, n);
    }

    // Sort ascending and renormalize columns.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    out.eigenvalues.resize(n);
    out.vectors.assign(n * n, cd{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = d[src];
        double cn2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cd vij = vec[i * n + src];
            cn2 += vij.real() * vij.real() + vij.imag() * vij.imag();
        }
        const double inv = 1.0 / std::sqrt(cn2);
        for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + j] = vec[i * n + src] * inv;
    }
    return out;
}

EighResult eigh(const OperatorMatrix& h) { return eigh(h.data(), h.dim()); }

OperatorMatrix spectral_map(const OperatorMatrix& h, const std::function<cd(double)>& f) {
    const std::size_t n = h.dim();
    const EighResult es = eigh(h);
    // W = V diag(f(lambda)), row-major column scaling
    std::vector<cd> wmat(n * n);
    std::vector<cd> fvals(n);
    for (std::size_t j = 0; j < n; ++j) fvals[j] = f(es.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) wmat[i * n + j] = es.vectors[i * n + j] * fvals[j];
    // out = W V^dagger
    std::vector<cd> vh(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) vh[i * n + j] = std::conj(es.vectors[j * n + i]);
    std::vector<cd> outm(n * n);
    kern::matmul(wmat.data(), n, vh.data(), n, outm.data(), n, n, n, n);
    return OperatorMatrix{h.layout(), std::move(outm), false};
}

double spectral_norm_hermitian(const OperatorMatrix& h) {
    const EighResult es = eigh(h);
    double out = 0.0;
    for (double lam : es.eigenvalues) out = std::max(out, std::abs(lam));
    return out;
}

}  // namespace cavq
