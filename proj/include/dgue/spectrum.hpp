#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dgue {

/// Real eigenvalues in ascending order.
class Spectrum {
public:
    Spectrum() = default;
    /// Throws DomainError unless `ascending` is sorted non-decreasingly.
    explicit Spectrum(std::vector<double> ascending);
    static Spectrum from_unsorted(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vector() const { return values_; }

    double sum() const;
    double sum_of_squares() const;

private:
    std::vector<double> values_;
};

}  // namespace dgue
