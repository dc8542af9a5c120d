#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cavq {

struct Subsystem {
    std::string label;
    std::size_t dim = 0;

    bool operator==(const Subsystem&) const = default;
};

// Ordered tensor factorization of a composite Hilbert space. Basis indices
// are row-major mixed radix: the first subsystem owns the most significant
// digit.
class SystemLayout {
public:
    SystemLayout() = default;
    explicit SystemLayout(std::vector<Subsystem> subsystems);

    static SystemLayout single(std::string label, std::size_t dim);

    std::size_t total_dim() const { return total_dim_; }
    std::size_t subsystem_count() const { return subsystems_.size(); }
    const Subsystem& subsystem(std::size_t i) const { return subsystems_.at(i); }
    std::span<const Subsystem> subsystems() const { return subsystems_; }

    bool has(std::string_view label) const;
    // Throws std::out_of_range for unknown labels.
    std::size_t index_of(std::string_view label) const;
    std::size_t dim_of(std::string_view label) const;

    // Stride of subsystem i in the flat basis index.
    std::size_t stride(std::size_t i) const { return strides_.at(i); }
    std::size_t digit(std::size_t flat_index, std::size_t i) const {
        return (flat_index / strides_.at(i)) % subsystems_[i].dim;
    }

    bool operator==(const SystemLayout&) const = default;

private:
    std::vector<Subsystem> subsystems_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
};

// Concatenation, used by kron.
SystemLayout concat(const SystemLayout& a, const SystemLayout& b);

}  // namespace cavq
