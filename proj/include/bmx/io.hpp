// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bmx/bitmask.hpp"
#include "bmx/expander.hpp"
#include "bmx/field.hpp"
#include "bmx/group_testing.hpp"
#include "bmx/sparse_vector.hpp"

namespace bmx::io {

/// All artifacts share one container: an ASCII header line
///   BMX1 <type> key=value key=value ...
/// terminated by '\n', followed by a little-endian binary payload. GF(2)
/// dense payloads are bit-packed least-significant-bit first. Layouts are
/// bit-exact; identical inputs produce identical files.

void write_expander(const std::filesystem::path& path, const LayeredExpander& g);
LayeredExpander read_expander(const std::filesystem::path& path);

void write_sparse_vector(const std::filesystem::path& path, const SparseVector& v,
                         std::uint64_t length);
SparseVector read_sparse_vector(const std::filesystem::path& path, std::uint64_t* length_out);

void write_dense_vector(const std::filesystem::path& path, const Field& field,
                        std::span<const std::uint64_t> values);
std::pair<Field, std::vector<std::uint64_t>> read_dense_vector(const std::filesystem::path& path);

/// Reads either vector encoding as a dense array.
std::pair<Field, std::vector<std::uint64_t>> read_vector_as_dense(
    const std::filesystem::path& path);

void write_syndrome(const std::filesystem::path& path, const Syndrome& syn);
Syndrome read_syndrome(const std::filesystem::path& path);

void write_disjunct(const std::filesystem::path& path, const DisjunctMatrix& m);
DisjunctMatrix read_disjunct(const std::filesystem::path& path);

void write_outcomes(const std::filesystem::path& path, const OutcomeVector& out);
OutcomeVector read_outcomes(const std::filesystem::path& path);

}  // namespace bmx::io
