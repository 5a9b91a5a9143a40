#pragma once

#include <string>

#include "rsel/feature_matrix.hpp"

namespace rsel {

enum class DatasetFormat { csv, binary };

// CSV: header `id,camera,label,f0,...,f{d-1}`, one image per line, reals
// written with full round-trip precision.
//
// Binary: magic "RSEL1", little-endian u32 n, u32 d, n*d f64 values
// column-major, n u32 camera ids, n u32 labels, n u32-length-prefixed
// UTF-8 ids.

FeatureMatrix load_dataset(const std::string& path, DatasetFormat format);
void save_dataset(const FeatureMatrix& m, const std::string& path, DatasetFormat format);

/// Picks binary for ".bin"/".rsel", csv for ".csv"; throws otherwise.
DatasetFormat format_from_extension(const std::string& path);

void save_csv(const FeatureMatrix& m, const std::string& path);
void save_binary(const FeatureMatrix& m, const std::string& path);
FeatureMatrix load_csv(const std::string& path);
FeatureMatrix load_binary(const std::string& path);

} // namespace rsel
