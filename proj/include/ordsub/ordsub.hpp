// Copyright 2026 The ordsub Authors.
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

#ifndef ORDSUB_ORDSUB_HPP_
#define ORDSUB_ORDSUB_HPP_

#include "ordsub/calibration.hpp"
#include "ordsub/checker.hpp"
#include "ordsub/compose.hpp"
#include "ordsub/coverage.hpp"
#include "ordsub/errors.hpp"
#include "ordsub/instances.hpp"
#include "ordsub/rng.hpp"
#include "ordsub/sequence.hpp"
#include "ordsub/solver.hpp"

#endif  // ORDSUB_ORDSUB_HPP_
