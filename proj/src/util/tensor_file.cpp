/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/util/tensor_file.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lbforge {

static_assert(std::endian::native == std::endian::little,
              "tensor container assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'L', 'B', 'T', 'C'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
}  // namespace

const NamedTensor& TensorFile::find(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("tensor file: missing tensor '" + name + "'");
}

void write_tensor_file(const std::string& path, const TensorFile& file) {
  nlohmann::json header;
  header["kind"] = file.kind;
  header["meta"] = file.meta;
  auto& list = header["tensors"] = nlohmann::json::array();
  for (const auto& t : file.tensors) {
    if (t.element_count() != static_cast<long>(t.data.size())) {
      throw std::runtime_error("tensor file: shape/data mismatch for '" + t.name + "'");
    }
    list.push_back({{"name", t.name}, {"shape", t.shape}});
  }
  const std::string header_str = header.dump();

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("tensor file: cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(header_str.size()));
  os.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));
  for (const auto& t : file.tensors) {
    os.write(reinterpret_cast<const char*>(t.data.data()),
             static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  }
  if (!os) throw std::runtime_error("tensor file: write failed for '" + path + "'");
}

TensorFile read_tensor_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("tensor file: cannot open '" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("tensor file: bad magic in '" + path + "'");
  }
  const std::uint32_t version = get_u32(is);
  if (version != kVersion) {
    throw std::runtime_error("tensor file: unsupported version in '" + path + "'");
  }
  const std::uint32_t header_len = get_u32(is);
  std::string header_str(header_len, '\0');
  is.read(header_str.data(), header_len);
  if (!is) throw std::runtime_error("tensor file: truncated header in '" + path + "'");
  nlohmann::json header = nlohmann::json::parse(header_str);

  TensorFile file;
  file.kind = header.value("kind", "");
  file.meta = header.value("meta", nlohmann::json::object());
  for (const auto& entry : header.at("tensors")) {
    NamedTensor t;
    t.name = entry.at("name").get<std::string>();
    t.shape = entry.at("shape").get<std::vector<long>>();
    t.data.resize(static_cast<std::size_t>(t.element_count()));
    is.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(double)));
    if (!is) throw std::runtime_error("tensor file: truncated payload in '" + path + "'");
    file.tensors.push_back(std::move(t));
  }
  return file;
}

}  // namespace lbforge
