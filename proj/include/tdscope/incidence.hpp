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

#include "tdscope/sphere_math.hpp"
#include "tdscope/types.hpp"

namespace tdscope {

/// Plane-wave probe: propagation theta, field along theta x perp(pol_index).
struct Incidence {
  Triad triad;
  int pol_index = 1;

  const UnitVec3& direction() const { return triad.theta; }
  /// Unit vector theta x theta_perp; the incident field is i kappa times it.
  Vec3 field_axis() const { return triad.theta.vec().cross(triad.perp(pol_index).vec()); }
};

}  // namespace tdscope
