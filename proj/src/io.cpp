// Copyright 2026 The atof Authors
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

#include "atof/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>

#include "atof/error.hpp"

namespace atofms {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename U>
U to_little(U v) {
  if constexpr (std::endian::native == std::endian::big) {
    U out = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      out = static_cast<U>((out << 8) | (v & 0xff));
      v = static_cast<U>(v >> 8);
    }
    return out;
  } else {
    return v;
  }
}

template <typename U>
void put(std::ostream& os, U v) {
  v = to_little(v);
  char buf[sizeof(U)];
  std::memcpy(buf, &v, sizeof(U));
  os.write(buf, sizeof(U));
}

template <typename U>
U get(std::istream& is) {
  char buf[sizeof(U)];
  is.read(buf, sizeof(U));
  require(static_cast<std::size_t>(is.gcount()) == sizeof(U), ErrorKind::data,
          "binary array: truncated file");
  U v;
  std::memcpy(&v, buf, sizeof(U));
  return to_little(v);
}

}  // namespace

void write_array(std::ostream& os, std::string_view magic, std::uint32_t n, std::uint32_t scans,
                 std::span<const double> values) {
  require(magic.size() == 8, ErrorKind::invalid_argument, "binary array: magic must be 8 bytes");
  os.write(magic.data(), 8);
  put<std::uint32_t>(os, n);
  put<std::uint32_t>(os, scans);
  put<std::uint64_t>(os, values.size());
  for (double v : values) put<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
  require(static_cast<bool>(os), ErrorKind::io, "binary array: write failed");
}

ArrayFile read_array(std::istream& is, std::string_view magic) {
  char tag[8] = {};
  is.read(tag, 8);
  require(is.gcount() == 8 && std::string_view(tag, 8) == magic, ErrorKind::data,
          "binary array: expected magic " + std::string(magic));
  ArrayFile out;
  out.n = get<std::uint32_t>(is);
  out.scans = get<std::uint32_t>(is);
  const auto count = get<std::uint64_t>(is);
  require(count < (std::uint64_t{1} << 34), ErrorKind::data, "binary array: implausible length");
  out.values.resize(static_cast<std::size_t>(count));
  for (auto& v : out.values) v = std::bit_cast<double>(get<std::uint64_t>(is));
  return out;
}

void write_trace(std::ostream& os, const Trace& trace) {
  write_array(os, kTraceMagic, static_cast<std::uint32_t>(trace.n),
              static_cast<std::uint32_t>(trace.scans), trace.y);
}

Trace read_trace(std::istream& is) {
  auto a = read_array(is, kTraceMagic);
  return {a.n, a.scans, std::move(a.values)};
}

void write_spectrum(std::ostream& os, const SpectrumEstimate& x, std::size_t scans) {
  write_array(os, kSpectrumMagic, static_cast<std::uint32_t>(x.x.size()),
              static_cast<std::uint32_t>(scans), x.x);
}

SpectrumEstimate read_spectrum(std::istream& is) {
  auto a = read_array(is, kSpectrumMagic);
  require(a.values.size() == a.n, ErrorKind::data, "spectrum file: length does not match n");
  SpectrumEstimate out;
  out.x = std::move(a.values);
  return out;
}

void write_scans(std::ostream& os, std::span<const ScanRealization> scans) {
  const std::size_t n = scans.empty() ? 0 : scans.front().size();
  std::vector<double> flat;
  flat.reserve(n * scans.size());
  for (const auto& s : scans) {
    require(s.size() == n, ErrorKind::dimension, "scan archive: scans differ in length");
    flat.insert(flat.end(), s.begin(), s.end());
  }
  write_array(os, kScansMagic, static_cast<std::uint32_t>(n),
              static_cast<std::uint32_t>(scans.size()), flat);
}

std::vector<ScanRealization> read_scans(std::istream& is) {
  const auto a = read_array(is, kScansMagic);
  require(a.values.size() == std::size_t{a.n} * a.scans, ErrorKind::data,
          "scan archive: length does not match n * N");
  std::vector<ScanRealization> out(a.scans);
  for (std::size_t l = 0; l < a.scans; ++l) {
    const auto first = a.values.begin() + static_cast<std::ptrdiff_t>(l * a.n);
    out[l].assign(first, first + a.n);
  }
  return out;
}

void write_cost_history(std::ostream& os, const SolverState& state) {
  os << "iter,theta,cost,max_delta\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << 0 << ',' << ',' << state.initial_cost << ",\n";
  for (const auto& r : state.history)
    os << r.iter << ',' << r.theta << ',' << r.cost << ',' << r.max_delta << '\n';
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fn,
                bool binary) {
  std::ofstream os(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  require(static_cast<bool>(os), ErrorKind::io, "cannot open for writing: " + path.string());
  fn(os);
  os.flush();
  require(static_cast<bool>(os), ErrorKind::io, "write failed: " + path.string());
}

void read_file(const std::filesystem::path& path, const std::function<void(std::istream&)>& fn,
               bool binary) {
  std::ifstream is(path, binary ? std::ios::binary | std::ios::in : std::ios::in);
  require(static_cast<bool>(is), ErrorKind::io, "cannot open for reading: " + path.string());
  fn(is);
}

}  // namespace atofms
