#include "cavq/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavq/eigh.hpp"
#include "cavq/kernels.hpp"

namespace cavq {

OperatorMatrix::OperatorMatrix(SystemLayout layout, std::vector<cd> entries, bool hermitian_hint)
    : layout_(std::move(layout)),
      m_(std::move(entries)),
      dim_(layout_.total_dim()),
      hermitian_hint_(hermitian_hint) {
    if (m_.size() != dim_ * dim_)
        throw std::invalid_argument("entry count does not match layout dimension");
    if (hermitian_hint_ && hermiticity_error() > 1e-12)
        throw std::invalid_argument("matrix violates its hermitian hint");
}

OperatorMatrix OperatorMatrix::identity(SystemLayout layout) {
    const std::size_t d = layout.total_dim();
    std::vector<cd> m(d * d, cd{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = cd{1.0, 0.0};
    return OperatorMatrix{std::move(layout), std::move(m), true};
}

OperatorMatrix OperatorMatrix::zero(SystemLayout layout) {
    const std::size_t d = layout.total_dim();
    return OperatorMatrix{std::move(layout), std::vector<cd>(d * d, cd{0.0, 0.0}), true};
}

OperatorMatrix OperatorMatrix::adjoint() const {
    std::vector<cd> out(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out[j * dim_ + i] = std::conj(m_[i * dim_ + j]);
    return OperatorMatrix{layout_, std::move(out), hermitian_hint_};
}

double OperatorMatrix::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            err = std::max(err, std::abs(m_[i * dim_ + j] - std::conj(m_[j * dim_ + i])));
    return err;
}

double OperatorMatrix::unitarity_error() const {
    const OperatorMatrix prod = adjoint() * (*this);
    double err = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const cd want = (i == j) ? cd{1.0, 0.0} : cd{0.0, 0.0};
            err = std::max(err, std::abs(prod.at(i, j) - want));
        }
    return err;
}

double OperatorMatrix::max_abs() const {
    double out = 0.0;
    for (const cd& v : m_) out = std::max(out, std::abs(v));
    return out;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
    if (dim_ != rhs.dim_) throw std::invalid_argument("operator dimensions differ");
    kern::axpy(cd{1.0, 0.0}, rhs.m_.data(), m_.data(), m_.size());
    hermitian_hint_ = hermitian_hint_ && rhs.hermitian_hint_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
    if (dim_ != rhs.dim_) throw std::invalid_argument("operator dimensions differ");
    kern::axpy(cd{-1.0, 0.0}, rhs.m_.data(), m_.data(), m_.size());
    hermitian_hint_ = hermitian_hint_ && rhs.hermitian_hint_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cd scale) {
    kern::scal(scale, m_.data(), m_.size());
    hermitian_hint_ = hermitian_hint_ && scale.imag() == 0.0;
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("operator dimensions differ");
    const std::size_t d = lhs.dim_;
    std::vector<cd> out(d * d);
    kern::matmul(lhs.m_.data(), d, rhs.m_.data(), d, out.data(), d, d, d, d);
    return OperatorMatrix{lhs.layout_, std::move(out), false};
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    const std::size_t d = da * db;
    std::vector<cd> out(d * d);
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ja = 0; ja < da; ++ja) {
            const cd aij = a.at(ia, ja);
            for (std::size_t ib = 0; ib < db; ++ib) {
                cd* row = out.data() + (ia * db + ib) * d + ja * db;
                const cd* brow = b.data().data() + ib * db;
                for (std::size_t jb = 0; jb < db; ++jb) row[jb] = aij * brow[jb];
            }
        }
    return OperatorMatrix{concat(a.layout(), b.layout()), std::move(out),
                          a.hermitian_hint() && b.hermitian_hint()};
}

OperatorMatrix embed(const OperatorMatrix& op, const SystemLayout& layout,
                     std::span<const std::string> targets) {
    const std::size_t nt = targets.size();
    if (nt == 0) throw std::invalid_argument("embed needs at least one target");
    std::vector<std::size_t> tpos(nt);
    std::size_t tdim = 1;
    for (std::size_t j = 0; j < nt; ++j) {
        tpos[j] = layout.index_of(targets[j]);
        for (std::size_t k = 0; k < j; ++k)
            if (tpos[k] == tpos[j])
                throw std::invalid_argument("duplicate embed target: " + targets[j]);
        tdim *= layout.subsystem(tpos[j]).dim;
    }
    if (op.dim() != tdim)
        throw std::invalid_argument("operator dimension does not match target dimensions");

    // Strides of the op's own row-major index over the target tuple.
    std::vector<std::size_t> tstride(nt);
    {
        std::size_t s = tdim;
        for (std::size_t j = 0; j < nt; ++j) {
            s /= layout.subsystem(tpos[j]).dim;
            tstride[j] = s;
        }
    }

    const std::size_t d = layout.total_dim();
    std::vector<cd> out(d * d, cd{0.0, 0.0});
    for (std::size_t row = 0; row < d; ++row) {
        std::size_t it = 0;
        std::size_t spectator = row;
        for (std::size_t j = 0; j < nt; ++j) {
            const std::size_t digit = layout.digit(row, tpos[j]);
            it += digit * tstride[j];
            spectator -= digit * layout.stride(tpos[j]);
        }
        const cd* oprow = op.data().data() + it * tdim;
        cd* outrow = out.data() + row * d;
        for (std::size_t jt = 0; jt < tdim; ++jt) {
            const cd v = oprow[jt];
            if (v == cd{0.0, 0.0}) continue;
            std::size_t col = spectator;
            std::size_t rem = jt;
            for (std::size_t j = 0; j < nt; ++j) {
                const std::size_t digit = rem / tstride[j];
                rem %= tstride[j];
                col += digit * layout.stride(tpos[j]);
            }
            outrow[col] = v;
        }
    }
    return OperatorMatrix{layout, std::move(out), op.hermitian_hint()};
}

OperatorMatrix embed(const OperatorMatrix& op, const SystemLayout& layout,
                     std::initializer_list<std::string> targets) {
    std::vector<std::string> t(targets);
    return embed(op, layout, std::span<const std::string>(t));
}

StateVector apply(const OperatorMatrix& op, const StateVector& psi, bool renormalize) {
    if (op.dim() != psi.dim()) throw std::invalid_argument("operator/state dimensions differ");
    std::vector<cd> out(psi.dim());
    kern::matvec(op.data().data(), op.dim(), psi.amplitudes().data(), out.data(), op.dim(),
                 op.dim());
    if (renormalize) return StateVector::normalized(psi.layout(), std::move(out));
    return StateVector::unnormalized(psi.layout(), std::move(out));
}

cd expectation(const StateVector& psi, const OperatorMatrix& op) {
    if (op.dim() != psi.dim()) throw std::invalid_argument("operator/state dimensions differ");
    std::vector<cd> tmp(psi.dim());
    kern::matvec(op.data().data(), op.dim(), psi.amplitudes().data(), tmp.data(), op.dim(),
                 op.dim());
    return kern::dotc(psi.amplitudes().data(), tmp.data(), psi.dim());
}

double trace_overlap(const OperatorMatrix& u, const OperatorMatrix& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("operator dimensions differ");
    const cd tr = kern::dotc(u.data().data(), v.data().data(), u.data().size());
    return std::abs(tr) / static_cast<double>(u.dim());
}

namespace {

// Layout with one subsystem removed; throws if it was the only one.
SystemLayout drop_subsystem(const SystemLayout& layout, std::size_t pos) {
    std::vector<Subsystem> subs;
    for (std::size_t i = 0; i < layout.subsystem_count(); ++i)
        if (i != pos) subs.push_back(layout.subsystem(i));
    return SystemLayout{std::move(subs)};
}

}  // namespace

OperatorMatrix partial_trace(const OperatorMatrix& op, std::string_view traced_label) {
    const SystemLayout& layout = op.layout();
    const std::size_t pos = layout.index_of(traced_label);
    if (layout.subsystem_count() < 2)
        throw std::invalid_argument("cannot trace out the only subsystem");
    const std::size_t tdim = layout.subsystem(pos).dim;
    const std::size_t tstr = layout.stride(pos);
    SystemLayout red = drop_subsystem(layout, pos);
    const std::size_t rd = red.total_dim();
    const std::size_t d = layout.total_dim();

    // Full indices with the traced digit fixed at zero, in reduced order.
    std::vector<std::size_t> base(rd);
    std::size_t w = 0;
    for (std::size_t i = 0; i < d; ++i)
        if (layout.digit(i, pos) == 0) base[w++] = i;

    std::vector<cd> out(rd * rd, cd{0.0, 0.0});
    for (std::size_t r1 = 0; r1 < rd; ++r1)
        for (std::size_t r2 = 0; r2 < rd; ++r2) {
            cd acc{0.0, 0.0};
            for (std::size_t t = 0; t < tdim; ++t)
                acc += op.at(base[r1] + t * tstr, base[r2] + t * tstr);
            out[r1 * rd + r2] = acc;
        }
    return OperatorMatrix{std::move(red), std::move(out), false};
}

OperatorMatrix reduced_density(const StateVector& psi, std::span<const std::string> keep) {
    const SystemLayout& layout = psi.layout();
    std::vector<bool> keep_mask(layout.subsystem_count(), false);
    std::vector<Subsystem> kept;
    for (std::size_t i = 0; i < layout.subsystem_count(); ++i) {
        for (const auto& label : keep)
            if (layout.subsystem(i).label == label) keep_mask[i] = true;
        if (keep_mask[i]) kept.push_back(layout.subsystem(i));
    }
    if (kept.size() != keep.size())
        throw std::invalid_argument("reduced_density: unknown or duplicate subsystem label");
    SystemLayout red{std::move(kept)};
    const std::size_t rd = red.total_dim();
    const std::size_t d = layout.total_dim();
    const std::size_t ed = d / rd;

    // Bucket the full index by environment configuration.
    std::vector<std::vector<std::size_t>> buckets(ed, std::vector<std::size_t>(rd));
    {
        std::vector<std::size_t> env_id(d);
        std::vector<std::size_t> keep_id(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t k = 0;
            std::size_t e = 0;
            for (std::size_t s = 0; s < layout.subsystem_count(); ++s) {
                const std::size_t digit = layout.digit(i, s);
                if (keep_mask[s])
                    k = k * layout.subsystem(s).dim + digit;
                else
                    e = e * layout.subsystem(s).dim + digit;
            }
            keep_id[i] = k;
            env_id[i] = e;
        }
        for (std::size_t i = 0; i < d; ++i) buckets[env_id[i]][keep_id[i]] = i;
    }

    std::vector<cd> rho(rd * rd, cd{0.0, 0.0});
    std::vector<cd> v(rd);
    for (std::size_t e = 0; e < ed; ++e) {
        for (std::size_t k = 0; k < rd; ++k) v[k] = psi.amplitude(buckets[e][k]);
        kern::rank1_update(rho.data(), rd, cd{1.0, 0.0}, v.data(), v.data(), rd, rd);
    }
    return OperatorMatrix{std::move(red), std::move(rho), true};
}

OperatorMatrix reduced_density(const StateVector& psi, std::initializer_list<std::string> keep) {
    std::vector<std::string> k(keep);
    return reduced_density(psi, std::span<const std::string>(k));
}

double purity(const OperatorMatrix& rho) {
    cd tr{0.0, 0.0};
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) tr += rho.at(i, j) * rho.at(j, i);
    return tr.real();
}

namespace {

double nuclear_norm(const OperatorMatrix& a) {
    const OperatorMatrix aha = a.adjoint() * a;
    const EighResult es = eigh(aha);
    double nuc = 0.0;
    for (double lam : es.eigenvalues) nuc += std::sqrt(std::max(0.0, lam));
    return nuc;
}

}  // namespace

double factorization_overlap(const OperatorMatrix& u, std::string_view product_label) {
    return nuclear_norm(partial_trace(u, product_label)) / static_cast<double>(u.dim());
}

OperatorMatrix subsystem_block(const OperatorMatrix& u, std::string_view label,
                               std::size_t in_digit, std::size_t out_digit) {
    const SystemLayout& layout = u.layout();
    const std::size_t pos = layout.index_of(label);
    if (layout.subsystem_count() < 2)
        throw std::invalid_argument("subsystem_block: cannot strip the only subsystem");
    if (in_digit >= layout.subsystem(pos).dim || out_digit >= layout.subsystem(pos).dim)
        throw std::invalid_argument("subsystem_block: digit out of range");
    SystemLayout red = drop_subsystem(layout, pos);
    const std::size_t rd = red.total_dim();
    const std::size_t d = layout.total_dim();
    const std::size_t str = layout.stride(pos);

    std::vector<std::size_t> base(rd);
    std::size_t w = 0;
    for (std::size_t i = 0; i < d; ++i)
        if (layout.digit(i, pos) == 0) base[w++] = i;

    std::vector<cd> out(rd * rd);
    for (std::size_t r1 = 0; r1 < rd; ++r1)
        for (std::size_t r2 = 0; r2 < rd; ++r2)
            out[r1 * rd + r2] = u.at(base[r1] + out_digit * str, base[r2] + in_digit * str);
    return OperatorMatrix{std::move(red), std::move(out), false};
}

double sector_factorization_overlap(const OperatorMatrix& u, std::string_view label,
                                    std::size_t digit) {
    const OperatorMatrix block = subsystem_block(u, label, digit, digit);
    return nuclear_norm(block) / static_cast<double>(block.dim());
}

}  // namespace cavq
