// Copyright 2026 The Modboat Holonomic Authors
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

#include "modboat/doc_table.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>

#include <unistd.h>

#include "modboat/angles.h"
#include "modboat/errors.h"

namespace modboat {

namespace {

constexpr char kMagic[4] = {'D', 'O', 'C', 'T'};

template <typename T>
void PutLe(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T GetLe(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw TableFormatError("DoC table truncated");
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

int AmpHalfCount(double resolution) {
  return static_cast<int>(std::lround(DocTable::kMaxAmplitude / resolution));
}

}  // namespace

GridAxis DocTable::PhiAxisFor(double resolution) {
  // Last node stays strictly below pi; the wrap gap is <= one step.
  auto count = static_cast<std::uint32_t>(std::ceil(kTwoPi / resolution - 1e-9));
  return {-kPi, resolution, count};
}

GridAxis DocTable::AmpAxisFor(double resolution) {
  const int half = AmpHalfCount(resolution);
  return {-half * resolution, resolution, static_cast<std::uint32_t>(2 * half + 1)};
}

double DocTable::PhiAt(int k) const { return -kPi + k * phi_axis_.step; }

double DocTable::AmpAt(int k) const {
  // Symmetric about zero bit for bit.
  const int half = static_cast<int>(amp_axis_.count / 2);
  return (k - half) * amp_axis_.step;
}

int DocTable::PhiIndex(double phi) const {
  const double u = (WrapToPi(phi) + kPi) / phi_axis_.step;
  const auto k = static_cast<long>(std::lround(u));
  return static_cast<int>(k % static_cast<long>(phi_axis_.count));
}

int DocTable::AmpIndex(double amp) const {
  const int half = static_cast<int>(amp_axis_.count / 2);
  const long k = std::lround(amp / amp_axis_.step) + half;
  if (k < 0 || k >= static_cast<long>(amp_axis_.count)) {
    throw OutOfRangeError("amplitude " + std::to_string(amp) + " outside DoC table");
  }
  return static_cast<int>(k);
}

GridIndex DocTable::IndexOf(const WaveformParams& p) const {
  return {PhiIndex(p.phi0), AmpIndex(p.amp)};
}

WaveformParams DocTable::ParamsAt(const GridIndex& g) const {
  return {PhiAt(g.phi), AmpAt(g.amp)};
}

float DocTable::Lookup(const WaveformParams& p_i, const WaveformParams& p_j) const {
  return At(IndexOf(p_i), IndexOf(p_j));
}

DocTable DocTable::Build(const CollisionRegion& region, unsigned threads) {
  DocTable t;
  t.relation_ = region.relation;
  t.resolution_ = region.resolution;
  t.phi_axis_ = PhiAxisFor(region.resolution);
  t.amp_axis_ = AmpAxisFor(region.resolution);
  const int np = static_cast<int>(t.phi_axis_.count);
  const int na = static_cast<int>(t.amp_axis_.count);
  t.values_.assign(static_cast<size_t>(np) * na * np * na, 0.0f);

  // Negating both amplitudes reverses the segment, which leaves the DoC
  // unchanged, so only half of the amplitude pairs are evaluated.
  const int pairs = na * na;
  auto slab = [&](int pi) {
    for (int pj = 0; pj < np; ++pj) {
      for (int p = 0; p < pairs; ++p) {
        const int mirror = pairs - 1 - p;
        if (p > mirror) break;
        const GridIndex gi{pi, p / na};
        const GridIndex gj{pj, p % na};
        const PhaseSegment seg = SwimTrajectory(t.ParamsAt(gi), t.ParamsAt(gj));
        const auto v = static_cast<float>(DocWrapped(seg, region));
        t.values_[t.Offset(gi, gj)] = v;
        t.values_[t.Offset({pi, mirror / na}, {pj, mirror % na})] = v;
      }
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(np));
  if (threads == 1) {
    for (int pi = 0; pi < np; ++pi) slab(pi);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int pi = static_cast<int>(w); pi < np; pi += static_cast<int>(threads)) {
          slab(pi);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return t;
}

void DocTable::Write(std::ostream& out) const {
  out.write(kMagic, 4);
  PutLe<std::uint32_t>(out, kFormatVersion);
  PutLe<std::uint8_t>(out, static_cast<std::uint8_t>(relation_));
  PutLe<double>(out, resolution_);
  for (const GridAxis* axis : {&phi_axis_, &amp_axis_, &phi_axis_, &amp_axis_}) {
    PutLe<double>(out, axis->min);
    PutLe<double>(out, axis->step);
    PutLe<std::uint32_t>(out, axis->count);
  }
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values_.data()),
              static_cast<std::streamsize>(values_.size() * sizeof(float)));
  } else {
    for (float v : values_) PutLe<float>(out, v);
  }
  if (!out) throw Error("failed writing DoC table");
}

DocTable DocTable::Read(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw TableFormatError("not a DoC table (bad magic)");
  }
  const auto version = GetLe<std::uint32_t>(in);
  if (version != kFormatVersion) {
    throw TableFormatError("unsupported DoC table format version " +
                           std::to_string(version) + " (expected " +
                           std::to_string(kFormatVersion) + ")");
  }
  DocTable t;
  const auto rel = GetLe<std::uint8_t>(in);
  if (rel > 3) throw TableFormatError("invalid relation id in DoC table");
  t.relation_ = static_cast<NeighborRelation>(rel);
  t.resolution_ = GetLe<double>(in);
  GridAxis axes[4];
  for (GridAxis& axis : axes) {
    axis.min = GetLe<double>(in);
    axis.step = GetLe<double>(in);
    axis.count = GetLe<std::uint32_t>(in);
  }
  if (!(axes[0] == axes[2]) || !(axes[1] == axes[3])) {
    throw TableFormatError("DoC table axes of module i and j differ");
  }
  if (!(axes[0] == PhiAxisFor(t.resolution_)) || !(axes[1] == AmpAxisFor(t.resolution_))) {
    throw TableFormatError("DoC table axes do not match its resolution");
  }
  t.phi_axis_ = axes[0];
  t.amp_axis_ = axes[1];
  const size_t n = static_cast<size_t>(t.phi_axis_.count) * t.amp_axis_.count *
                   t.phi_axis_.count * t.amp_axis_.count;
  t.values_.resize(n);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(t.values_.data()),
            static_cast<std::streamsize>(n * sizeof(float)));
    if (!in) throw TableFormatError("DoC table truncated");
  } else {
    for (float& v : t.values_) v = GetLe<float>(in);
  }
  return t;
}

void DocTable::Save(const std::filesystem::path& path) const {
  // Write-then-rename so concurrent readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    Write(out);
  }
  std::filesystem::rename(tmp, path);
}

DocTable DocTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open DoC table " + path.string());
  return Read(in);
}

DocTriple ComputeDocTriple(const WaveformParams& p_i, const WaveformParams& p_j,
                           double step_phi, double step_amp, const DocTable& table) {
  const GridIndex j = table.IndexOf(p_j);
  DocTriple out;
  out.d0 = table.At(table.IndexOf(p_i), j);
  out.d_phi = table.At(table.IndexOf({p_i.phi0 + step_phi, p_i.amp}), j);
  out.d_amp = table.At(table.IndexOf({p_i.phi0, p_i.amp + step_amp}), j);
  return out;
}

}  // namespace modboat
