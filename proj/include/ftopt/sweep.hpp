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

#ifndef FTOPT_SWEEP_HPP
#define FTOPT_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ftopt/concat.hpp"

namespace ftopt {

/// One grid axis. Points are min + i (max - min)/(count - 1), or the
/// log-spaced analogue; count = 1 gives the single point min.
struct SweepAxis {
    std::string name;
    double min = 0;
    double max = 0;
    int count = 1;
    bool log = false;

    std::vector<double> points() const {
        std::vector<double> out(count);
        if (count == 1) {
            out[0] = min;
            return out;
        }
        for (int i = 0; i < count; i++) {
            double t = static_cast<double>(i) / (count - 1);
            if (log) {
                out[i] = std::pow(10.0, std::log10(min) + t * (std::log10(max) - std::log10(min)));
            } else {
                out[i] = min + t * (max - min);
            }
        }
        // Snap to 15 significant digits so decimal grids stay decimal
        // (0.01 + 0.98/98 prints as 0.02, not 0.019999999999999997).
        for (double &x : out) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", x);
            x = std::strtod(buf, nullptr);
        }
        out.front() = min;
        out.back() = max;
        return out;
    }
};

inline constexpr int kMaxSweepAxes = 2;

inline void validate_axis(const SweepAxis &axis) {
    if (axis.name.empty()) {
        throw std::invalid_argument("sweep axis: empty name");
    }
    if (axis.count < 1) {
        throw std::invalid_argument("sweep axis '" + axis.name + "': count must be >= 1");
    }
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || axis.max < axis.min) {
        throw std::invalid_argument("sweep axis '" + axis.name + "': need finite min <= max");
    }
    if (axis.log && !(axis.min > 0)) {
        throw std::invalid_argument("sweep axis '" + axis.name + "': log spacing needs min > 0");
    }
}

/// Parses "name:min:max:count[:log|:lin]".
inline SweepAxis parse_sweep_axis(std::string_view text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(':', start);
        parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    if (parts.size() != 4 && parts.size() != 5) {
        throw std::invalid_argument("sweep axis '" + std::string(text) + "': expected name:min:max:count[:log]");
    }
    auto number = [&](const std::string &s) {
        char *end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) {
            throw std::invalid_argument("sweep axis '" + std::string(text) + "': bad number '" + s + "'");
        }
        return v;
    };
    SweepAxis axis;
    axis.name = parts[0];
    axis.min = number(parts[1]);
    axis.max = number(parts[2]);
    double count = number(parts[3]);
    if (count != std::floor(count) || count < 1 || count > 1e7) {
        throw std::invalid_argument("sweep axis '" + axis.name + "': count must be a positive integer");
    }
    axis.count = static_cast<int>(count);
    if (parts.size() == 5) {
        if (parts[4] == "log") {
            axis.log = true;
        } else if (parts[4] != "lin") {
            throw std::invalid_argument("sweep axis '" + axis.name + "': spacing must be log or lin");
        }
    }
    validate_axis(axis);
    return axis;
}

inline std::string format_sweep_axis(const SweepAxis &axis, const std::function<std::string(double)> &fmt) {
    return axis.name + ":" + fmt(axis.min) + ":" + fmt(axis.max) + ":" + std::to_string(axis.count) +
           (axis.log ? ":log" : "");
}

struct SweepPoint {
    std::vector<double> coords;  ///< one value per axis, in axis order
    OptResult result;
};

/// Row-major grid (first axis slowest). Every point is built by make_model
/// sequentially, so validation errors surface before any work starts; the
/// scans then run concurrently into preassigned slots.
template <typename MakeModel>
std::vector<SweepPoint> run_sweep(
    const std::vector<SweepAxis> &axes, const FTScheme &scheme, MakeModel &&make_model, Level k_cap,
    unsigned n_threads = 0) {
    if (axes.empty() || axes.size() > kMaxSweepAxes) {
        throw std::invalid_argument("sweep: need 1 or 2 axes");
    }
    std::vector<std::vector<double>> grids;
    size_t total = 1;
    for (const auto &a : axes) {
        validate_axis(a);
        grids.push_back(a.points());
        total *= grids.back().size();
    }

    std::vector<SweepPoint> rows(total);
    std::vector<NoiseModel> models;
    models.reserve(total);
    for (size_t idx = 0; idx < total; idx++) {
        size_t rem = idx;
        std::vector<double> coords(axes.size());
        for (size_t a = axes.size(); a-- > 0;) {
            coords[a] = grids[a][rem % grids[a].size()];
            rem /= grids[a].size();
        }
        models.push_back(make_model(coords));
        rows[idx].coords = std::move(coords);
    }

    if (n_threads == 0) {
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    }
    n_threads = static_cast<unsigned>(std::min<size_t>(n_threads, total));
    std::vector<std::exception_ptr> errors(n_threads);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < n_threads; t++) {
        workers.emplace_back([&, t] {
            try {
                for (size_t idx = t; idx < total; idx += n_threads) {
                    rows[idx].result = find_kmax(scheme, models[idx], k_cap);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &w : workers) {
        w.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

}  // namespace ftopt

#endif
