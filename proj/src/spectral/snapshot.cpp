/***********************************************************************
*
*  Copyright 2026 the nscascade authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied.  See the License for the specific language governing
*  permissions and limitations under the License.
*
************************************************************************/

#include "nsc/spectral/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nsc::spectral {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'C', 'S', 'N', 'A', 'P', '\0'};
constexpr std::uint32_t kVersion = 1;

struct Header {
    char magic[8];
    std::uint32_t version;
    std::uint32_t n;
    std::uint32_t ncomp;
    std::uint32_t reserved;
    double time;
    char pad[32];
};
static_assert(sizeof(Header) == 64, "snapshot header must be 64 bytes");

} // namespace

void write_snapshot(const std::string& path, double time,
                    const std::vector<const SpectralField*>& comps)
{
    if (comps.empty()) throw std::invalid_argument("snapshot: no components");
    const Grid& g = comps.front()->grid();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("snapshot: cannot open " + path + " for writing");

    Header h{};
    std::memcpy(h.magic, kMagic, 8);
    h.version = kVersion;
    h.n = static_cast<std::uint32_t>(g.n);
    h.ncomp = static_cast<std::uint32_t>(comps.size());
    h.reserved = 0;
    h.time = time;
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));

    const int n = g.n;
    std::vector<std::complex<double>> row(n);
    for (const SpectralField* f : comps) {
        for (int i = 0; i < n; ++i) {
            const int x1 = g.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int x2 = g.wavenumber(j);
                for (int k = 0; k < n; ++k)
                    row[k] = f->mode(x1, x2, g.wavenumber(k));
                out.write(reinterpret_cast<const char*>(row.data()),
                          n * sizeof(std::complex<double>));
            }
        }
    }
    if (!out) throw std::runtime_error("snapshot: write failed for " + path);
}

void write_snapshot(const std::string& path, double time, const VectorField& u)
{
    write_snapshot(path, time, {&u[0], &u[1], &u[2]});
}

Snapshot read_snapshot(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("snapshot: cannot open " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    if (h.version != kVersion)
        throw std::runtime_error("snapshot: unsupported version in " + path);

    Snapshot snap;
    snap.time = h.time;
    const Grid g(static_cast<int>(h.n));
    const int n = g.n;
    std::vector<std::complex<double>> row(n);
    for (std::uint32_t c = 0; c < h.ncomp; ++c) {
        SpectralField f(g);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                in.read(reinterpret_cast<char*>(row.data()),
                        n * sizeof(std::complex<double>));
                if (!in) throw std::runtime_error("snapshot: truncated file " + path);
                // keep only the canonical half; the mirrored half is
                // implied by Hermitian symmetry
                for (int k = 0; k <= n / 2; ++k)
                    f.data()[g.index(i, j, k)] = row[k];
            }
        }
        snap.comps.push_back(std::move(f));
    }
    return snap;
}

} // namespace nsc::spectral
