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


#ifndef FTOPT_FTOPT_HPP
#define FTOPT_FTOPT_HPP

#include "ftopt/concat.hpp"
#include "ftopt/gate_sim.hpp"
#include "ftopt/io.hpp"
#include "ftopt/log_prob.hpp"
#include "ftopt/long_range.hpp"
#include "ftopt/noise_model.hpp"
#include "ftopt/scheme.hpp"
#include "ftopt/shor.hpp"
#include "ftopt/sweep.hpp"

#endif
