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

#ifndef NSC_SPECTRAL_SNAPSHOT_HPP
#define NSC_SPECTRAL_SNAPSHOT_HPP

#include <string>
#include <vector>
#include "nsc/spectral/field.hpp"

namespace nsc::spectral {

// Binary field snapshot.  Layout: a 64-byte header (8-byte magic
// "NSCSNAP\0", u32 version, u32 n, u32 component count, u32 reserved,
// f64 sample time, zero padding), then per component the full n^3 cube of
// complex doubles in row-major frequency order (first index outermost,
// each index running 0..n-1 in storage order).  The full cube is
// reconstructed from half-complex storage through Hermitian symmetry so
// readers need no knowledge of the r2c layout.  Little-endian throughout.
void write_snapshot(const std::string& path, double time,
                    const std::vector<const SpectralField*>& comps);
void write_snapshot(const std::string& path, double time, const VectorField& u);

struct Snapshot {
    double time = 0.0;
    std::vector<SpectralField> comps;
};

Snapshot read_snapshot(const std::string& path);

} // namespace nsc::spectral

#endif
