#include "rsel/synthetic.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace rsel {

FeatureMatrix gen_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    if (spec.identities < 1 || spec.cameras < 1 || spec.images_per_identity_per_camera < 1 ||
        spec.dim < 1) {
        throw std::invalid_argument("gen_synthetic: all counts must be >= 1");
    }
    if (spec.cluster_std < 0.0 || spec.camera_shift_scale < 0.0) {
        throw std::invalid_argument("gen_synthetic: scales must be >= 0");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto draw = [&](double scale) {
        Eigen::VectorXd v(spec.dim);
        for (int r = 0; r < spec.dim; ++r) {
            v(r) = scale * gauss(rng);
        }
        return v;
    };

    std::vector<Eigen::VectorXd> anchors(static_cast<std::size_t>(spec.identities));
    for (auto& a : anchors) {
        a = draw(1.0);
    }
    std::vector<Eigen::VectorXd> shifts(static_cast<std::size_t>(spec.cameras));
    for (auto& s : shifts) {
        s = draw(spec.camera_shift_scale);
    }

    const Eigen::Index n = static_cast<Eigen::Index>(spec.identities) * spec.cameras *
                           spec.images_per_identity_per_camera;
    Eigen::MatrixXd data(spec.dim, n);
    std::vector<std::string> ids;
    std::vector<std::uint32_t> cameras, labels;
    ids.reserve(static_cast<std::size_t>(n));
    cameras.reserve(static_cast<std::size_t>(n));
    labels.reserve(static_cast<std::size_t>(n));

    Eigen::Index col = 0;
    for (int person = 0; person < spec.identities; ++person) {
        for (int camera = 0; camera < spec.cameras; ++camera) {
            for (int image = 0; image < spec.images_per_identity_per_camera; ++image) {
                data.col(col++) = anchors[static_cast<std::size_t>(person)] +
                                  shifts[static_cast<std::size_t>(camera)] +
                                  draw(spec.cluster_std);
                ids.push_back("p" + std::to_string(person) + "_c" + std::to_string(camera) +
                              "_i" + std::to_string(image));
                cameras.push_back(static_cast<std::uint32_t>(camera));
                labels.push_back(static_cast<std::uint32_t>(person));
            }
        }
    }
    return FeatureMatrix(std::move(data), std::move(ids), std::move(cameras), std::move(labels));
}

} // namespace rsel
