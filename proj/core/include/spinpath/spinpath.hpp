// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spinpath/bridge.hpp"
#include "spinpath/errors.hpp"
#include "spinpath/hamiltonian.hpp"
#include "spinpath/magnetic.hpp"
#include "spinpath/matrix_exp.hpp"
#include "spinpath/mc_kernel.hpp"
#include "spinpath/philox.hpp"
#include "spinpath/quadrature.hpp"
#include "spinpath/quantization.hpp"
#include "spinpath/schrodinger.hpp"
#include "spinpath/semigroup.hpp"
#include "spinpath/spin.hpp"
#include "spinpath/symbols.hpp"
