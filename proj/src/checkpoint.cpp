// SPDX-License-Identifier: Apache-2.0
#include "asd/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace asd {

namespace {

constexpr char kMagic[4] = {'A', 'S', 'D', 'W'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("truncated checkpoint");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f64(std::ostream& os, const double* p, std::size_t n) {
  static_assert(sizeof(double) == 8);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &p[i], 8);
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
    os.write(reinterpret_cast<const char*>(b), 8);
  }
}

void read_f64(std::istream& is, double* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("truncated checkpoint");
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    std::memcpy(&p[i], &bits, 8);
  }
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<std::pair<std::string, Tensor*>>& params) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, t] : params) {
    write_u32(os, static_cast<std::uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u32(os, static_cast<std::uint32_t>(t->shape.size()));
    for (int e : t->shape) write_u32(os, static_cast<std::uint32_t>(e));
    write_f64(os, t->data.data(), t->data.size());
  }
  if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

void load_checkpoint(const std::string& path,
                     const std::vector<std::pair<std::string, Tensor*>>& params) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("bad checkpoint magic");
  if (read_u32(is) != kVersion) throw std::runtime_error("unsupported checkpoint version");
  std::uint32_t count = read_u32(is);
  if (count != params.size()) throw std::runtime_error("checkpoint parameter count mismatch");
  for (const auto& [name, t] : params) {
    std::uint32_t nlen = read_u32(is);
    std::string fname(nlen, '\0');
    is.read(fname.data(), nlen);
    if (fname != name) throw std::runtime_error("checkpoint name mismatch: " + fname + " vs " + name);
    std::uint32_t rank = read_u32(is);
    std::vector<int> shape(rank);
    for (auto& e : shape) e = static_cast<int>(read_u32(is));
    if (shape != t->shape) throw std::runtime_error("checkpoint shape mismatch for " + name);
    read_f64(is, t->data.data(), t->data.size());
  }
}

}  // namespace asd
