// Copyright 2026 The Longtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "longtail/error.hpp"
#include "longtail/models.hpp"

namespace longtail {

namespace {

constexpr char kMagic[4] = {'L', 'T', 'F', 'M'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void WriteLe(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T ReadLe(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw Error("model file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void WriteMatrix(std::ostream& out, const FactorMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) WriteLe(out, m(r, c));
  }
}

void ReadMatrix(std::istream& in, FactorMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = ReadLe<double>(in);
  }
}

}  // namespace

void SaveModel(const FactorModel& model, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  WriteLe<std::uint32_t>(out, kVersion);
  WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(model.dim()));
  WriteLe<std::uint64_t>(out, model.num_users());
  WriteLe<std::uint64_t>(out, model.num_items());
  WriteLe<std::uint8_t>(out, model.item_bias.empty() ? 0 : 1);
  WriteMatrix(out, model.user_factors);
  WriteMatrix(out, model.item_factors);
  for (double b : model.item_bias) WriteLe(out, b);
  if (!out) throw Error("failed writing model");
}

FactorModel LoadModel(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw Error("not a longtail model file (bad magic)");
  }
  const auto version = ReadLe<std::uint32_t>(in);
  if (version != kVersion) throw Error(fmt::format("unsupported model version {}", version));
  const auto dim = ReadLe<std::uint32_t>(in);
  const auto nu = ReadLe<std::uint64_t>(in);
  const auto ni = ReadLe<std::uint64_t>(in);
  const auto has_bias = ReadLe<std::uint8_t>(in);
  if (dim == 0 || has_bias > 1) throw Error("corrupt model header");
  FactorModel m;
  m.user_factors.resize(static_cast<Eigen::Index>(nu), dim);
  m.item_factors.resize(static_cast<Eigen::Index>(ni), dim);
  ReadMatrix(in, m.user_factors);
  ReadMatrix(in, m.item_factors);
  if (has_bias) {
    m.item_bias.resize(ni);
    for (auto& b : m.item_bias) b = ReadLe<double>(in);
  }
  return m;
}

void SaveModelFile(const FactorModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  SaveModel(model, out);
  out.close();
  if (!out) throw IoError(path, "write failed");
}

FactorModel LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  try {
    return LoadModel(in);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(path, e.message());
  }
}

}  // namespace longtail
