// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spinpath/errors.hpp"

namespace spinpath {

// exp(tau * A) by scaling and squaring with a truncated Taylor series.
CMatrix mat_exp(const CMatrix& A, cplx tau, int max_dim = 1024);

}  // namespace spinpath
