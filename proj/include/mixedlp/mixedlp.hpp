// Copyright 2026 The mixedlp Authors
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

#pragma once

#include "mixedlp/bodies.hpp"
#include "mixedlp/core.hpp"
#include "mixedlp/functionals.hpp"
#include "mixedlp/io.hpp"
#include "mixedlp/lab.hpp"
#include "mixedlp/measures.hpp"
#include "mixedlp/oracles.hpp"
#include "mixedlp/polytope.hpp"
#include "mixedlp/projections.hpp"
#include "mixedlp/quadrature.hpp"
#include "mixedlp/rng.hpp"
#include "mixedlp/spherical_measure.hpp"
#include "mixedlp/suite.hpp"
