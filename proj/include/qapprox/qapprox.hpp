// Copyright 2026 The qapprox Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/// @file
/// Umbrella header.
#pragma once

#include "qapprox/bounds.hpp"
#include "qapprox/error.hpp"
#include "qapprox/io.hpp"
#include "qapprox/linalg.hpp"
#include "qapprox/measure_mc.hpp"
#include "qapprox/metrics.hpp"
#include "qapprox/nets.hpp"
#include "qapprox/problems.hpp"
#include "qapprox/rng.hpp"
#include "qapprox/synthesis.hpp"
#include "qapprox/tensor_core.hpp"
