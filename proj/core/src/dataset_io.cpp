#include "rsel/dataset_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rsel {

namespace {

constexpr char kMagic[5] = {'R', 'S', 'E', 'L', '1'};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t read_u32(std::istream& in, const std::string& path, const char* what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        fail(path, std::string("truncated while reading ") + what);
    }
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double read_f64(std::istream& in, const std::string& path, const char* what) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) {
        fail(path, std::string("truncated while reading ") + what);
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    }
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(std::numeric_limits<double>::max_digits10);
    ss << v;
    return ss.str();
}

} // namespace

void save_csv(const FeatureMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        fail(path, "cannot open for writing");
    }
    const Eigen::Index d = m.dim();
    const Eigen::Index n = m.count();
    out << "id,camera,label";
    for (Eigen::Index r = 0; r < d; ++r) {
        out << ",f" << r;
    }
    out << '\n';
    for (Eigen::Index c = 0; c < n; ++c) {
        out << m.ids_[static_cast<std::size_t>(c)] << ','
            << m.cameras_[static_cast<std::size_t>(c)] << ','
            << m.labels_[static_cast<std::size_t>(c)];
        for (Eigen::Index r = 0; r < d; ++r) {
            out << ',' << format_double(m.data_(r, c));
        }
        out << '\n';
    }
    if (!out) {
        fail(path, "write failed");
    }
}

FeatureMatrix load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(path, "cannot open");
    }
    std::string line;
    if (!std::getline(in, line)) {
        fail(path, "missing header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "id" || header[1] != "camera" || header[2] != "label") {
        fail(path, "line 1: malformed header, expected id,camera,label,f0,...");
    }
    const std::size_t d = header.size() - 3;
    for (std::size_t r = 0; r < d; ++r) {
        if (header[3 + r] != "f" + std::to_string(r)) {
            fail(path, "line 1: malformed header, feature column " + std::to_string(r));
        }
    }

    std::vector<std::string> ids;
    std::vector<std::uint32_t> cameras, labels;
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != d + 3) {
            fail(path, "line " + std::to_string(line_no) + ": expected " +
                           std::to_string(d + 3) + " fields, got " + std::to_string(fields.size()));
        }
        ids.push_back(fields[0]);
        try {
            cameras.push_back(static_cast<std::uint32_t>(std::stoul(fields[1])));
            labels.push_back(static_cast<std::uint32_t>(std::stoul(fields[2])));
        } catch (const std::exception&) {
            fail(path, "line " + std::to_string(line_no) + ": bad camera/label field");
        }
        for (std::size_t r = 0; r < d; ++r) {
            double v;
            try {
                std::size_t used = 0;
                v = std::stod(fields[3 + r], &used);
                if (used != fields[3 + r].size()) {
                    throw std::invalid_argument("trailing");
                }
            } catch (const std::exception&) {
                fail(path, "line " + std::to_string(line_no) + ": bad real in field f" +
                               std::to_string(r));
            }
            if (!std::isfinite(v)) {
                fail(path, "line " + std::to_string(line_no) + ": non-finite value in field f" +
                               std::to_string(r));
            }
            values.push_back(v);
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(ids.size());
    Eigen::MatrixXd data(static_cast<Eigen::Index>(d), n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(d); ++r) {
            data(r, c) = values[static_cast<std::size_t>(c) * d + static_cast<std::size_t>(r)];
        }
    }
    return FeatureMatrix(std::move(data), std::move(ids), std::move(cameras), std::move(labels));
}

void save_binary(const FeatureMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(path, "cannot open for writing");
    }
    out.write(kMagic, sizeof kMagic);
    const auto n = static_cast<std::uint32_t>(m.count());
    const auto d = static_cast<std::uint32_t>(m.dim());
    write_u32(out, n);
    write_u32(out, d);
    for (std::uint32_t c = 0; c < n; ++c) {
        for (std::uint32_t r = 0; r < d; ++r) {
            write_f64(out, m.data_(r, c));
        }
    }
    for (std::uint32_t c = 0; c < n; ++c) {
        write_u32(out, m.cameras_[c]);
    }
    for (std::uint32_t c = 0; c < n; ++c) {
        write_u32(out, m.labels_[c]);
    }
    for (std::uint32_t c = 0; c < n; ++c) {
        const std::string& id = m.ids_[c];
        write_u32(out, static_cast<std::uint32_t>(id.size()));
        out.write(id.data(), static_cast<std::streamsize>(id.size()));
    }
    if (!out) {
        fail(path, "write failed");
    }
}

FeatureMatrix load_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(path, "cannot open");
    }
    char magic[sizeof kMagic];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        fail(path, "bad magic, not a RSEL1 dataset");
    }
    const std::uint32_t n = read_u32(in, path, "column count");
    const std::uint32_t d = read_u32(in, path, "feature dimension");
    Eigen::MatrixXd data(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
    for (std::uint32_t c = 0; c < n; ++c) {
        for (std::uint32_t r = 0; r < d; ++r) {
            data(r, c) = read_f64(in, path, "feature payload");
        }
    }
    std::vector<std::uint32_t> cameras(n), labels(n);
    for (std::uint32_t c = 0; c < n; ++c) {
        cameras[c] = read_u32(in, path, "camera ids");
    }
    for (std::uint32_t c = 0; c < n; ++c) {
        labels[c] = read_u32(in, path, "labels");
    }
    std::vector<std::string> ids(n);
    for (std::uint32_t c = 0; c < n; ++c) {
        const std::uint32_t len = read_u32(in, path, "id length");
        std::string id(len, '\0');
        if (len > 0 && !in.read(id.data(), len)) {
            const auto got = in.gcount();
            fail(path, "truncated id payload, expected " + std::to_string(len) + " bytes, got " +
                           std::to_string(got));
        }
        ids[c] = std::move(id);
    }
    return FeatureMatrix(std::move(data), std::move(ids), std::move(cameras), std::move(labels));
}

DatasetFormat format_from_extension(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".csv") {
        return DatasetFormat::csv;
    }
    if (ext == ".bin" || ext == ".rsel") {
        return DatasetFormat::binary;
    }
    throw std::runtime_error(path + ": cannot infer dataset format from extension");
}

FeatureMatrix load_dataset(const std::string& path, DatasetFormat format) {
    return format == DatasetFormat::csv ? load_csv(path) : load_binary(path);
}

void save_dataset(const FeatureMatrix& m, const std::string& path, DatasetFormat format) {
    if (format == DatasetFormat::csv) {
        save_csv(m, path);
    } else {
        save_binary(m, path);
    }
}

} // namespace rsel
