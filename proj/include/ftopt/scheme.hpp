// Copyright 2026 The ftopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FTOPT_SCHEME_HPP
#define FTOPT_SCHEME_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ftopt {

/// Concatenation level (number of code layers). Level 0 is the bare hardware.
using Level = int;

/// Overhead constants of a concatenated fault-tolerance scheme.
///
///   A       physical gates in an extended rectangle (exRec)
///   A_prime physical gates in a rectangle (Rec)
///   B       malignant fault pairs; the scale-independent threshold is 1/B
///   D       multiplicative growth of physical components per added level
///   M       clock cycles per level for one logical gate
struct FTScheme {
    std::int64_t A = 1;
    std::int64_t A_prime = 1;
    std::int64_t B = 1;
    std::int64_t D = 1;
    std::int64_t M = 1;

    double threshold() const {
        return 1.0 / static_cast<double>(B);
    }
    double log10_B() const {
        return std::log10(static_cast<double>(B));
    }
    double log10_D() const {
        return std::log10(static_cast<double>(D));
    }

    /// log10 of the physical gate count of a level-k logical gate, A*(A')^(k-1).
    /// Level 0 is one gate.
    double log10_gates_at_level(Level k) const {
        if (k < 0) {
            throw std::invalid_argument("level must be >= 0");
        }
        if (k == 0) {
            return 0.0;
        }
        return std::log10(static_cast<double>(A)) + (k - 1) * std::log10(static_cast<double>(A_prime));
    }

    bool operator==(const FTScheme &) const = default;
};

inline FTScheme make_scheme(std::int64_t A, std::int64_t A_prime, std::int64_t B, std::int64_t D, std::int64_t M) {
    auto check = [](std::int64_t v, const char *name) {
        if (v < 1) {
            throw std::invalid_argument(std::string("scheme constant ") + name + " must be >= 1, got " + std::to_string(v));
        }
    };
    check(A, "A");
    check(A_prime, "A_prime");
    check(B, "B");
    check(D, "D");
    check(M, "M");
    return FTScheme{A, A_prime, B, D, M};
}

inline std::vector<std::string> scheme_preset_names() {
    return {"aliferis2006"};
}

/// Named presets. "aliferis2006" is the 7-qubit-code CNOT exRec construction:
/// A=575, A'=291, B=10^4, D~A'=291, M=3.
inline FTScheme scheme_preset(std::string_view name) {
    if (name == "aliferis2006") {
        return make_scheme(575, 291, 10000, 291, 3);
    }
    throw std::invalid_argument("unknown scheme preset '" + std::string(name) + "'");
}

}  // namespace ftopt

#endif
