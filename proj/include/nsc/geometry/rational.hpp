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

#ifndef NSC_GEOMETRY_RATIONAL_HPP
#define NSC_GEOMETRY_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nsc::geometry {

// Exact rational arithmetic on 64-bit integers.  All quantities that enter
// the decomposition coefficients and the line geometry are small fractions
// (denominators through 25 or so), so int64 with eager gcd reduction is
// plenty; multiplication is still checked through 128-bit intermediates.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
        const __int128 p = static_cast<__int128>(a) * b;
        if (p > INT64_MAX || p < INT64_MIN)
            throw std::overflow_error("Rat: 64-bit overflow");
        return static_cast<std::int64_t>(p);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(mul_checked(a.num, b.den) + mul_checked(b.num, a.den),
                   mul_checked(a.den, b.den));
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(mul_checked(a.num, b.den) - mul_checked(b.num, a.den),
                   mul_checked(a.den, b.den));
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        // cross-reduce before multiplying to keep intermediates small
        const std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
        const std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
        return Rat(mul_checked(a.num / g1, b.num / g2),
                   mul_checked(a.den / g2, b.den / g1));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::domain_error("Rat: division by zero");
        return a * Rat(b.den, b.num);
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }

    Rat abs() const { Rat r = *this; if (r.num < 0) r.num = -r.num; return r; }
};

} // namespace nsc::geometry

#endif
