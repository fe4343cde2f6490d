// quadrature.cpp - series acceleration

#include "azhm/quadrature.hpp"

#include "azhm/errors.hpp"

namespace azhm::quad {

EulerAccelerator::EulerAccelerator(int order) : order_(order) {
    if (order < 1) throw UsageError("EulerAccelerator: order must be >= 1");
}

void EulerAccelerator::push(double partial_sum) {
    sums_.push_back(partial_sum);
    if (static_cast<int>(sums_.size()) > order_ + 1) sums_.pop_front();
}

double EulerAccelerator::estimate() const {
    if (sums_.empty()) return 0.0;
    if (!ready()) return sums_.back();
    std::vector<double> s(sums_.begin(), sums_.end());
    for (int m = 0; m < order_; ++m)
        for (std::size_t i = 0; i + 1 < s.size() - m; ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    return s[0];
}

} // namespace azhm::quad
