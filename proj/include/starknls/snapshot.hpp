#pragma once

#include "starknls/field.hpp"

#include <filesystem>

namespace starknls {

// Binary snapshot format, little-endian:
//   magic "NLSF", u32 version = 1, u32 n, u32 N per axis, f64 L per axis,
//   f64 t, f64 epsilon, then N^n samples as interleaved (re, im) f64,
//   row-major with axis 1 fastest.

void write_snapshot(const Field& f, const std::filesystem::path& path, double epsilon = 1.0);
Field read_snapshot(const std::filesystem::path& path, double* epsilon_out = nullptr);
/// Read and require the stored grid to match `expected`.
Field read_snapshot(const std::filesystem::path& path, const Grid& expected,
                    double* epsilon_out = nullptr);

}  // namespace starknls
