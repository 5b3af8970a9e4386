// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/CholmodSupport>

#include "spinpath/magnetic.hpp"

namespace spinpath::detail {

// Supernodal Cholesky for the Hermitian positive definite systems that
// appear in shift-invert and implicit time stepping.
using HermitianFactor = Eigen::CholmodSupernodalLLT<SpMatrix, Eigen::Lower>;

}  // namespace spinpath::detail
