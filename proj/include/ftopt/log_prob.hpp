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

#ifndef FTOPT_LOG_PROB_HPP
#define FTOPT_LOG_PROB_HPP

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace ftopt {

/// Base-10 logarithm of a non-negative probability-like quantity.
///
/// Logical error rates of concatenated codes scale like x^(2^k) and leave the
/// range of a double after a handful of levels, so every probability in this
/// library is carried as its log10. Exact zero is represented by -infinity.
/// Values above zero (quantities >= 1) are legal: the bounds being evaluated
/// are not probabilities outside their useful regime. Use `saturated()` when
/// a probability is needed for presentation.
class LogProb {
   public:
    constexpr LogProb() = default;

    explicit LogProb(double log10_value) : value_(log10_value) {
        if (std::isnan(log10_value) || log10_value == std::numeric_limits<double>::infinity()) {
            throw std::domain_error("LogProb: log10 value must be finite or -inf, got " + std::to_string(log10_value));
        }
    }

    static LogProb from_linear(double x) {
        if (std::isnan(x) || x < 0 || std::isinf(x)) {
            throw std::domain_error("LogProb: linear value must be finite and >= 0, got " + std::to_string(x));
        }
        return x == 0 ? zero() : LogProb(std::log10(x));
    }
    static LogProb zero() {
        LogProb p;
        p.value_ = -std::numeric_limits<double>::infinity();
        return p;
    }
    static LogProb one() {
        return LogProb(0.0);
    }

    double log10() const {
        return value_;
    }
    bool is_zero() const {
        return value_ == -std::numeric_limits<double>::infinity();
    }

    /// Linear value; underflows to 0 (or overflows to inf) outside the double range.
    double to_linear() const {
        return std::pow(10.0, value_);
    }
    /// Linear value only when it is comfortably representable (|log10| < 300).
    bool has_linear() const {
        return std::abs(value_) < 300;
    }
    /// Clamped to a probability: min(value, 1).
    LogProb saturated() const {
        return value_ > 0 ? one() : *this;
    }

    LogProb operator*(LogProb other) const {
        if (is_zero() || other.is_zero()) {
            return zero();
        }
        return LogProb(value_ + other.value_);
    }
    LogProb operator/(LogProb other) const {
        if (other.is_zero()) {
            throw std::domain_error("LogProb: division by zero");
        }
        if (is_zero()) {
            return zero();
        }
        return LogProb(value_ - other.value_);
    }
    /// x^e for real e >= 0; 0^0 is 1.
    LogProb pow(double exponent) const {
        if (std::isnan(exponent) || exponent < 0) {
            throw std::domain_error("LogProb::pow: exponent must be >= 0");
        }
        if (exponent == 0) {
            return one();
        }
        if (is_zero()) {
            return zero();
        }
        return LogProb(value_ * exponent);
    }

    friend auto operator<=>(LogProb a, LogProb b) {
        return a.value_ <=> b.value_;
    }
    friend bool operator==(LogProb a, LogProb b) {
        return a.value_ == b.value_;
    }

   private:
    double value_ = 0.0;
};

}  // namespace ftopt

#endif
