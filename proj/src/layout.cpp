#include "cavq/layout.hpp"

#include <stdexcept>
#include <unordered_set>

namespace cavq {

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
    if (subsystems_.empty()) throw std::invalid_argument("layout needs at least one subsystem");
    std::unordered_set<std::string_view> seen;
    total_dim_ = 1;
    for (const auto& s : subsystems_) {
        if (s.dim < 1) throw std::invalid_argument("subsystem dimension must be positive: " + s.label);
        if (!seen.insert(s.label).second)
            throw std::invalid_argument("duplicate subsystem label: " + s.label);
        total_dim_ *= s.dim;
    }
    strides_.resize(subsystems_.size());
    std::size_t stride = total_dim_;
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        stride /= subsystems_[i].dim;
        strides_[i] = stride;
    }
}

SystemLayout SystemLayout::single(std::string label, std::size_t dim) {
    return SystemLayout{{Subsystem{std::move(label), dim}}};
}

bool SystemLayout::has(std::string_view label) const {
    for (const auto& s : subsystems_)
        if (s.label == label) return true;
    return false;
}

std::size_t SystemLayout::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i)
        if (subsystems_[i].label == label) return i;
    throw std::out_of_range("unknown subsystem label: " + std::string(label));
}

std::size_t SystemLayout::dim_of(std::string_view label) const {
    return subsystems_[index_of(label)].dim;
}

SystemLayout concat(const SystemLayout& a, const SystemLayout& b) {
    std::vector<Subsystem> subs(a.subsystems().begin(), a.subsystems().end());
    subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
    return SystemLayout{std::move(subs)};
}

}  // namespace cavq
