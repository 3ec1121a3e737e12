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

#ifndef NSC_SPECTRAL_GRID_HPP
#define NSC_SPECTRAL_GRID_HPP

#include <cstddef>

namespace nsc::spectral {

// Uniform n^3 grid on the 2 pi torus with half-complex (r2c) spectral
// storage: the third frequency runs 0..n/2, the first two are full signed.
struct Grid {
    int n = 0;

    Grid() = default;
    explicit Grid(int n_) : n(n_) {}

    int nz() const { return n / 2 + 1; }
    std::size_t spectral_size() const
    {
        return static_cast<std::size_t>(n) * n * nz();
    }
    std::size_t real_size() const
    {
        return static_cast<std::size_t>(n) * n * n;
    }
    std::size_t index(int i, int j, int k) const
    {
        return (static_cast<std::size_t>(i) * n + j) * nz() + k;
    }
    // signed wavenumber for a storage index along the first two dims
    int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }
    int storage_index(int xi) const { return xi >= 0 ? xi : xi + n; }

    // two-thirds rule: modes with any |xi_i| > n/3 are zeroed
    int dealias_limit() const { return n / 3; }

    // conjugate-pair multiplicity of a storage entry in Parseval sums
    double parseval_weight(int k) const
    {
        return (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    }

    double dx() const;

    bool operator==(const Grid& o) const { return n == o.n; }
};

} // namespace nsc::spectral

#endif
