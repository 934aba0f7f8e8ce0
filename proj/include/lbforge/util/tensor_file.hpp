/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lbforge {

/// One named dense tensor, row-major doubles.
struct NamedTensor {
  std::string name;
  std::vector<long> shape;
  std::vector<double> data;

  long element_count() const {
    long n = 1;
    for (long s : shape) n *= s;
    return n;
  }
};

/// On-disk container used for checkpoints and feature dumps.
///
/// Byte layout, all integers little-endian:
///   bytes 0..3   magic "LBTC"
///   bytes 4..7   u32 format version (currently 1)
///   bytes 8..11  u32 byte length of the JSON header
///   header       UTF-8 JSON: {"kind": ..., "meta": {...},
///                "tensors": [{"name": ..., "shape": [...]}, ...]}
///   payload      concatenated IEEE-754 binary64 little-endian values,
///                one block per tensor in header order, row-major
struct TensorFile {
  std::string kind;
  nlohmann::json meta = nlohmann::json::object();
  std::vector<NamedTensor> tensors;

  const NamedTensor& find(const std::string& name) const;
};

void write_tensor_file(const std::string& path, const TensorFile& file);
TensorFile read_tensor_file(const std::string& path);

}  // namespace lbforge
