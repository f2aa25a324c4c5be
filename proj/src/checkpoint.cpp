// Copyright 2026 The osum Authors.
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

#include "osum/checkpoint.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>

namespace osum {
namespace {

constexpr char kMagic[8] = {'O', 'S', 'U', 'M', 'G', 'E', 'N', '\0'};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    out_.append(static_cast<const char*>(data), n);
  }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    u32(static_cast<std::uint32_t>(bits));
    u32(static_cast<std::uint32_t>(bits >> 32));
  }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() {
    const std::uint64_t lo = u32();
    const std::uint64_t hi = u32();
    return std::bit_cast<double>(lo | (hi << 32));
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    const auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      throw CheckpointError(CheckpointError::Kind::kFormat, "checkpoint ends unexpectedly");
    }
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string serialize_model(const GeneratorModel& model) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kCheckpointVersion);
  const auto& dims = model.dims();
  w.u32(static_cast<std::uint32_t>(dims.layers));
  w.u32(static_cast<std::uint32_t>(dims.heads));
  w.u32(static_cast<std::uint32_t>(dims.d_model));
  w.u32(static_cast<std::uint32_t>(dims.d_ff));
  w.u8(dims.tie_embeddings ? 1 : 0);
  w.f64(dims.dropout);
  const auto& tokens = model.vocab().tokens();
  w.u32(static_cast<std::uint32_t>(tokens.size()));
  for (const auto& token : tokens) {
    w.u32(static_cast<std::uint32_t>(token.size()));
    w.bytes(token.data(), token.size());
  }
  const auto& params = model.parameters();
  w.u32(static_cast<std::uint32_t>(params.size()));
  for (const auto& p : params) {
    w.u32(static_cast<std::uint32_t>(p.value.rows()));
    w.u32(static_cast<std::uint32_t>(p.value.cols()));
    for (const double v : p.value.values()) w.f32(static_cast<float>(v));
  }
  w.u32(crc_of(w.str()));
  return std::move(w.str());
}

GeneratorModel deserialize_model(std::string_view bytes) {
  constexpr std::size_t kHeader = sizeof(kMagic) + 4;
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CheckpointError(CheckpointError::Kind::kFormat, "not a generator checkpoint");
  }
  Reader header(bytes.substr(sizeof(kMagic), 4));
  const std::uint32_t version = header.u32();
  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::kVersion,
                          "unsupported checkpoint version " + std::to_string(version) +
                              " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  if (bytes.size() < kHeader + 4) {
    throw CheckpointError(CheckpointError::Kind::kChecksum, "checkpoint checksum mismatch");
  }
  const auto body = bytes.substr(0, bytes.size() - 4);
  Reader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.u32() != crc_of(body)) {
    throw CheckpointError(CheckpointError::Kind::kChecksum, "checkpoint checksum mismatch");
  }

  Reader r(body.substr(kHeader));
  ModelDims dims;
  dims.layers = r.u32();
  dims.heads = r.u32();
  dims.d_model = r.u32();
  dims.d_ff = r.u32();
  dims.tie_embeddings = r.u8() != 0;
  dims.dropout = r.f64();
  std::vector<std::string> tokens(r.u32());
  for (auto& token : tokens) token = std::string(r.bytes(r.u32()));

  GeneratorModel model = [&] {
    try {
      return GeneratorModel(dims, Vocabulary(std::move(tokens)));
    } catch (const InvalidArgument& e) {
      throw CheckpointError(CheckpointError::Kind::kFormat, e.what());
    }
  }();
  auto& params = model.parameters();
  if (r.u32() != params.size()) {
    throw CheckpointError(CheckpointError::Kind::kFormat, "parameter count mismatch");
  }
  for (auto& p : params) {
    const std::uint32_t rows = r.u32(), cols = r.u32();
    if (rows != p.value.rows() || cols != p.value.cols()) {
      throw CheckpointError(CheckpointError::Kind::kFormat, "shape mismatch for " + p.name);
    }
    for (double& v : p.value.values()) v = static_cast<double>(r.f32());
  }
  if (!r.done()) {
    throw CheckpointError(CheckpointError::Kind::kFormat, "trailing bytes in checkpoint");
  }
  if (!model.all_finite()) {
    throw CheckpointError(CheckpointError::Kind::kFormat, "checkpoint holds non-finite values");
  }
  return model;
}

void save_model(const GeneratorModel& model, const std::string& path) {
  const std::string bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing " + path);
}

GeneratorModel load_model(const std::string& path) { return deserialize_model(read_file(path)); }

}  // namespace osum
