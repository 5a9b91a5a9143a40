#include "rsel/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace rsel {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// next whitespace-delimited token, skipping `#` comments per the PPM spec
std::string next_token(std::istream& in, const std::string& path) {
    std::string token;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') {
                ch = in.get();
            }
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch) && ch != '#') {
        token.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    if (ch == '#') {
        in.unget();
    }
    if (token.empty()) {
        fail(path, "truncated header");
    }
    return token;
}

int parse_header_int(std::istream& in, const std::string& path, const char* what) {
    const std::string token = next_token(in, path);
    try {
        const int v = std::stoi(token);
        if (v <= 0) {
            throw std::invalid_argument("nonpositive");
        }
        return v;
    } catch (const std::exception&) {
        fail(path, std::string("bad ") + what + " '" + token + "'");
    }
}

struct Hsv {
    double h, s, v;  // h in [0, 1), s and v in [0, 1]
};

Hsv rgb_to_hsv(double r, double g, double b) {
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;
    Hsv out{0.0, 0.0, mx};
    if (mx > 0.0) {
        out.s = delta / mx;
    }
    if (delta > 0.0) {
        double h;
        if (mx == r) {
            h = (g - b) / delta;
        } else if (mx == g) {
            h = 2.0 + (b - r) / delta;
        } else {
            h = 4.0 + (r - g) / delta;
        }
        h /= 6.0;
        if (h < 0.0) {
            h += 1.0;
        }
        out.h = h;
    }
    return out;
}

// bilinear resize of an RGB u8 buffer into a row-major double buffer
std::vector<double> resize_bilinear(const RawImage& img, int out_h, int out_w) {
    std::vector<double> out(static_cast<std::size_t>(out_h) * out_w * 3);
    const double scale_y = static_cast<double>(img.height) / out_h;
    const double scale_x = static_cast<double>(img.width) / out_w;
    for (int y = 0; y < out_h; ++y) {
        const double sy = std::clamp((y + 0.5) * scale_y - 0.5, 0.0,
                                     static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(std::floor(sy));
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = sy - y0;
        for (int x = 0; x < out_w; ++x) {
            const double sx = std::clamp((x + 0.5) * scale_x - 0.5, 0.0,
                                         static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(std::floor(sx));
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double fx = sx - x0;
            for (int ch = 0; ch < 3; ++ch) {
                const auto at = [&](int yy, int xx) {
                    return static_cast<double>(
                        img.pixels[(static_cast<std::size_t>(yy) * img.width + xx) * 3 + ch]);
                };
                const double top = (1.0 - fx) * at(y0, x0) + fx * at(y0, x1);
                const double bot = (1.0 - fx) * at(y1, x0) + fx * at(y1, x1);
                out[(static_cast<std::size_t>(y) * out_w + x) * 3 + ch] =
                    (1.0 - fy) * top + fy * bot;
            }
        }
    }
    return out;
}

struct Strip {
    int y_begin, y_end;
};

int block_positions(int extent, int block, int stride) {
    if (extent < block) {
        return 0;
    }
    return (extent - block) / stride + 1;
}

void emit_strip_blocks(const std::vector<double>& rgb, int width,
                       const Strip& strip, const HsvBlockGeometry& geo,
                       std::vector<double>& features) {
    const int rows = block_positions(strip.y_end - strip.y_begin, geo.block_height, geo.stride_y());
    const int cols = block_positions(width, geo.block_width, geo.stride_x());
    for (int by = 0; by < rows; ++by) {
        for (int bx = 0; bx < cols; ++bx) {
            const int y0 = strip.y_begin + by * geo.stride_y();
            const int x0 = bx * geo.stride_x();
            double sum_cos = 0.0, sum_sin = 0.0, sum_s = 0.0, sum_v = 0.0;
            const int count = geo.block_height * geo.block_width;
            for (int y = y0; y < y0 + geo.block_height; ++y) {
                for (int x = x0; x < x0 + geo.block_width; ++x) {
                    const std::size_t base = (static_cast<std::size_t>(y) * width + x) * 3;
                    const Hsv hsv = rgb_to_hsv(rgb[base] / 255.0, rgb[base + 1] / 255.0,
                                               rgb[base + 2] / 255.0);
                    const double angle = 2.0 * std::numbers::pi * hsv.h;
                    sum_cos += std::cos(angle);
                    sum_sin += std::sin(angle);
                    sum_s += hsv.s;
                    sum_v += hsv.v;
                }
            }
            // circular mean hue; a vanishing resultant (e.g. all-gray) maps to 0
            double mean_h = 0.0;
            if (sum_cos * sum_cos + sum_sin * sum_sin > 1e-18) {
                mean_h = std::atan2(sum_sin, sum_cos) / (2.0 * std::numbers::pi);
                if (mean_h < 0.0) {
                    mean_h += 1.0;
                }
                if (mean_h >= 1.0) {
                    mean_h = 0.0;
                }
            }
            features.push_back(mean_h);
            features.push_back(sum_s / count);
            features.push_back(sum_v / count);
        }
    }
}

} // namespace

int HsvBlockGeometry::feature_dim() const {
    const int torso_begin = static_cast<int>(std::lround(head_end * resize_height));
    const int torso_end_px = static_cast<int>(std::lround(torso_end * resize_height));
    const int torso_rows = block_positions(torso_end_px - torso_begin, block_height, stride_y());
    const int legs_rows = block_positions(resize_height - torso_end_px, block_height, stride_y());
    const int cols = block_positions(resize_width, block_width, stride_x());
    return 3 * cols * (torso_rows + legs_rows);
}

RawImage load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(path, "cannot open");
    }
    char magic[2];
    if (!in.read(magic, 2)) {
        fail(path, "truncated header");
    }
    if (magic[0] != 'P' || magic[1] != '6') {
        if (magic[0] == 'P' && (magic[1] == '3' || magic[1] == '1' || magic[1] == '2' ||
                                magic[1] == '4' || magic[1] == '5')) {
            fail(path, std::string("unsupported variant P") + magic[1] + ", only binary P6");
        }
        fail(path, "not a PPM file");
    }
    RawImage img;
    img.width = parse_header_int(in, path, "width");
    img.height = parse_header_int(in, path, "height");
    const int maxval = parse_header_int(in, path, "maxval");
    if (maxval > 255) {
        fail(path, "only 8-bit channels supported, maxval " + std::to_string(maxval));
    }
    // the single whitespace byte after maxval was already consumed while
    // scanning the token, so the payload starts here

    const std::size_t expected = static_cast<std::size_t>(img.width) * img.height * 3;
    img.pixels.resize(expected);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(expected));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got != expected) {
        fail(path, "truncated payload, expected " + std::to_string(expected) + " bytes, got " +
                       std::to_string(got));
    }
    return img;
}

Eigen::VectorXd extract_hsv_blocks(const RawImage& img, const HsvBlockGeometry& geo) {
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
        throw std::invalid_argument("extract_hsv_blocks: empty or inconsistent image");
    }
    const std::vector<double> rgb = resize_bilinear(img, geo.resize_height, geo.resize_width);

    const int torso_begin = static_cast<int>(std::lround(geo.head_end * geo.resize_height));
    const int torso_end_px = static_cast<int>(std::lround(geo.torso_end * geo.resize_height));
    const Strip torso{torso_begin, torso_end_px};
    const Strip legs{torso_end_px, geo.resize_height};

    std::vector<double> features;
    features.reserve(static_cast<std::size_t>(geo.feature_dim()));
    emit_strip_blocks(rgb, geo.resize_width, torso, geo, features);
    emit_strip_blocks(rgb, geo.resize_width, legs, geo, features);

    return Eigen::Map<const Eigen::VectorXd>(features.data(),
                                             static_cast<Eigen::Index>(features.size()));
}

} // namespace rsel
