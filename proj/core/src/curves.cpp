#include "rsel/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rsel {

void AccuracyCurve::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (pt.accuracy < 0.0 || pt.accuracy > 1.0) {
            throw std::invalid_argument("AccuracyCurve: accuracy outside [0, 1]");
        }
        if (i > 0 && (pt.queries < points[i - 1].queries ||
                      pt.total_labeled < points[i - 1].total_labeled)) {
            throw std::invalid_argument("AccuracyCurve: counts must be non-decreasing");
        }
    }
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw std::invalid_argument("MonotoneCubic: need at least two matching points");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw std::invalid_argument("MonotoneCubic: x must be strictly increasing");
        }
    }

    // Fritsch-Carlson slopes
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_[0] = delta[0];
    slope_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // clamp endpoint slopes to keep the interpolant shape-preserving
    for (std::size_t i : {std::size_t{0}, n - 1}) {
        const double d = i == 0 ? delta[0] : delta[n - 2];
        if (d == 0.0) {
            slope_[i] = 0.0;
        } else if (slope_[i] / d < 0.0) {
            slope_[i] = 0.0;
        } else if (std::abs(slope_[i]) > 3.0 * std::abs(d)) {
            slope_[i] = 3.0 * d;
        }
    }
}

double MonotoneCubic::operator()(double at) const {
    if (at < x_.front() || at > x_.back()) {
        throw std::out_of_range("MonotoneCubic: " + std::to_string(at) + " outside [" +
                                std::to_string(x_.front()) + ", " + std::to_string(x_.back()) +
                                "]");
    }
    const auto upper = std::upper_bound(x_.begin(), x_.end(), at);
    std::size_t i = upper == x_.end() ? x_.size() - 2
                                      : static_cast<std::size_t>(upper - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (at - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

namespace {

double axis_value(const CurvePoint& pt, CurveAxis axis) {
    return axis == CurveAxis::queries ? static_cast<double>(pt.queries)
                                      : static_cast<double>(pt.total_labeled);
}

// curves may hold repeated x values (no new annotations in an iteration);
// keep the last point of each run so x is strictly increasing
std::pair<std::vector<double>, std::vector<double>>
strict_xy(const AccuracyCurve& curve, CurveAxis axis) {
    std::vector<double> x, y;
    for (const auto& pt : curve.points) {
        const double at = axis_value(pt, axis);
        if (!x.empty() && at == x.back()) {
            y.back() = pt.accuracy;
        } else {
            x.push_back(at);
            y.push_back(pt.accuracy);
        }
    }
    return {std::move(x), std::move(y)};
}

} // namespace

std::pair<double, double> common_support(const std::vector<AccuracyCurve>& curves,
                                         CurveAxis axis) {
    if (curves.empty()) {
        throw std::invalid_argument("common_support: no curves");
    }
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& curve : curves) {
        if (curve.points.empty()) {
            throw std::invalid_argument("common_support: empty curve");
        }
        lo = std::max(lo, axis_value(curve.points.front(), axis));
        hi = std::min(hi, axis_value(curve.points.back(), axis));
    }
    return {lo, hi};
}

AggregateCurve aggregate_curves(const std::vector<AccuracyCurve>& curves,
                                const std::vector<double>& grid,
                                CurveAxis axis) {
    if (curves.empty()) {
        throw std::invalid_argument("aggregate_curves: need at least one curve");
    }
    const auto [lo, hi] = common_support(curves, axis);
    for (double g : grid) {
        if (g < lo || g > hi) {
            throw std::out_of_range("aggregate_curves: grid point " + std::to_string(g) +
                                    " outside common support [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
        }
    }

    AggregateCurve out;
    out.grid = grid;
    out.mean.assign(grid.size(), 0.0);
    out.stddev.assign(grid.size(), 0.0);

    std::vector<std::vector<double>> resampled;
    resampled.reserve(curves.size());
    for (const auto& curve : curves) {
        curve.validate();
        auto [x, y] = strict_xy(curve, axis);
        std::vector<double> values(grid.size());
        if (x.size() == 1) {
            // degenerate single-point curve; support collapses to one x
            std::fill(values.begin(), values.end(), y[0]);
        } else {
            const MonotoneCubic interp(std::move(x), std::move(y));
            for (std::size_t g = 0; g < grid.size(); ++g) {
                values[g] = interp(grid[g]);
            }
        }
        resampled.push_back(std::move(values));
    }

    const double count = static_cast<double>(curves.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        for (const auto& values : resampled) {
            sum += values[g];
        }
        const double mean = sum / count;
        double var = 0.0;
        for (const auto& values : resampled) {
            var += (values[g] - mean) * (values[g] - mean);
        }
        out.mean[g] = mean;
        out.stddev[g] = std::sqrt(var / count);
    }
    return out;
}

} // namespace rsel
