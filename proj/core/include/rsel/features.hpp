#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace rsel {

struct RawImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // RGB triples, row-major
    std::string id;
    std::uint32_t camera_id = 0;
    std::uint32_t label = 0;
};

/// Binary 8-bit PPM (P6) decoder. ASCII (P3) files and other magics are
/// rejected; a short pixel payload reports expected vs actual byte counts.
RawImage load_ppm(const std::string& path);

struct HsvBlockGeometry {
    int resize_height = 128;
    int resize_width = 64;
    double head_end = 0.16;   // fraction of height; head strip is discarded
    double torso_end = 0.55;
    int block_width = 8;
    int block_height = 16;
    // 50% overlap in both directions
    int stride_x() const { return block_width / 2; }
    int stride_y() const { return block_height / 2; }

    int feature_dim() const;
};

/// Block-mean HSV appearance feature. The image is resized bilinearly,
/// split into head/torso/legs strips (head discarded), and the torso and
/// legs strips are tiled with overlapping blocks; each block contributes
/// its mean H (circular mean), S and V. Torso blocks come first, blocks
/// in row-major order.
Eigen::VectorXd extract_hsv_blocks(const RawImage& img,
                                   const HsvBlockGeometry& geometry = {});

} // namespace rsel
