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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "atof/simulator.hpp"
#include "atof/solver.hpp"
#include "atof/spectrum.hpp"

namespace atofms {

inline constexpr std::string_view kTraceMagic = "ATOFTRC1";
inline constexpr std::string_view kSpectrumMagic = "ATOFSPC1";
inline constexpr std::string_view kScansMagic = "ATOFSCN1";

/// Binary array: 8-byte magic, u32 n, u32 N, u64 count, then count
/// little-endian doubles. 24 header bytes in total.
struct ArrayFile {
  std::uint32_t n = 0;
  std::uint32_t scans = 0;
  std::vector<double> values;
};

void write_array(std::ostream& os, std::string_view magic, std::uint32_t n, std::uint32_t scans,
                 std::span<const double> values);
ArrayFile read_array(std::istream& is, std::string_view magic);

void write_trace(std::ostream& os, const Trace& trace);
Trace read_trace(std::istream& is);

void write_spectrum(std::ostream& os, const SpectrumEstimate& x, std::size_t scans);
SpectrumEstimate read_spectrum(std::istream& is);

/// All scans back to back, n values each.
void write_scans(std::ostream& os, std::span<const ScanRealization> scans);
std::vector<ScanRealization> read_scans(std::istream& is);

/// iter,theta,cost,max_delta; row 0 holds the starting cost.
void write_cost_history(std::ostream& os, const SolverState& state);

/// Opens the file, runs fn, and turns stream failures into io errors.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fn,
                bool binary = false);
void read_file(const std::filesystem::path& path, const std::function<void(std::istream&)>& fn,
               bool binary = false);

}  // namespace atofms
