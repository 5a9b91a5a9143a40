#pragma once

#include <string>
#include <vector>

namespace rsel {

struct CurvePoint {
    int queries = 0;        // cumulative annotation queries
    int total_labeled = 0;  // queries plus propagated labels
    double accuracy = 0.0;
};

/// Accuracy trajectory of one trial. Query and label counts are
/// non-decreasing along the curve; accuracy stays in [0, 1].
struct AccuracyCurve {
    std::vector<CurvePoint> points;
    std::string warning;  // set when the pool ran dry before the budget

    void validate() const;
};

enum class CurveAxis { queries, total_labeled };

struct AggregateCurve {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> stddev;
};

/// Resamples every curve onto the grid by monotone cubic (Fritsch-
/// Carlson) interpolation of accuracy against the chosen x-axis, then
/// takes the pointwise mean and population standard deviation. Grid
/// points outside the common support are an error naming the point.
AggregateCurve aggregate_curves(const std::vector<AccuracyCurve>& curves,
                                const std::vector<double>& grid,
                                CurveAxis axis = CurveAxis::queries);

/// Largest grid interval shared by all curves on the given axis.
std::pair<double, double> common_support(const std::vector<AccuracyCurve>& curves,
                                         CurveAxis axis);

/// Monotone cubic interpolant through (x, y); x strictly increasing.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    double operator()(double at) const;  // throws outside [x.front(), x.back()]

private:
    std::vector<double> x_, y_, slope_;
};

} // namespace rsel
