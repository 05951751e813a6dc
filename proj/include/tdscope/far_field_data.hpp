// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The tdscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <memory>
#include <vector>

#include "tdscope/incidence.hpp"
#include "tdscope/sphere_math.hpp"
#include "tdscope/types.hpp"

namespace tdscope {

/// Far-field samples for one incidence, collocated with the quadrature nodes.
struct FarFieldData {
  Incidence incidence;
  std::shared_ptr<const SphereQuadrature> quad;
  std::vector<CVec3> samples;
  bool corrupted = false;
};

}  // namespace tdscope
