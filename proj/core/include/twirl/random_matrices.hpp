// Copyright 2026 The Twirl Authors
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

#include "twirl/linalg.hpp"
#include "twirl/quantum_channels.hpp"
#include "twirl/random.hpp"

namespace twirl {

/// Complex Ginibre matrix with standard normal real and imaginary parts.
ComplexMatrix random_ginibre(Index rows, Index cols, RandomStream& stream);

/// (G + G^dagger) / 2 rescaled to spectral norm `norm`.
ComplexMatrix random_hermitian(Index d, RandomStream& stream, double norm = 1.0);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
ComplexMatrix random_unitary(Index d, RandomStream& stream);

/// G G^dagger / tr(G G^dagger): a full-rank random state.
DensityMatrix random_density(Index d, RandomStream& stream);

}  // namespace twirl
