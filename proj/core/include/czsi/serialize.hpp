//==============================================================================
// serialize.hpp — on-disk formats.
//
// Field binary: header of three little-endian 64-bit values
//     dim (int64) | side_length (float64 bits) | resolution (int64)
// followed by the row-major float64 payload (real-valued fields only).
//
// Field CSV: 1-D slices as "x,value" rows (2-D fields: the row through x2=idx).
//
// Kernel files: line-oriented text,
//     czkernel v1
//     dim <1|2>
//     term <degree> <re> <im> [pi^<k>]
// with '#' comments; <re>/<im> accept integers, rationals p/q, or decimals
// (all parsed to exact rationals).  The term denotes
//     pi^k * 2*Re((re + i*im) z^degree) / |z|^(dim+degree)
// in 2-D, and pi^k * re * x/|x|^2 in 1-D.  Round-trip stable (coefficients
// re-emitted in canonical rational form).
//
// All writers go through a write-to-temp-then-rename step so readers never
// observe partial files.
//==============================================================================
#pragma once

#include <czsi/grid.hpp>
#include <czsi/kernels.hpp>

#include <string>

namespace czsi {

/// Atomically write `content` to `path` (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

void write_field_binary(const std::string& path, const GridField& f);
GridField read_field_binary(const std::string& path);

/// CSV slice: all nodes for 1-D; the x2 = row_index row for 2-D.
void write_field_csv(const std::string& path, const GridField& f, int row_index = 0);

std::string kernel_spec_text(const KernelSpec& spec);
KernelSpec parse_kernel_text(const std::string& text);
void write_kernel_spec(const std::string& path, const KernelSpec& spec);
KernelSpec read_kernel_spec(const std::string& path);

}  // namespace czsi
