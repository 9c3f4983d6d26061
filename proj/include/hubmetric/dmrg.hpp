// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hubmetric/dmrg/engine.hpp"
#include "hubmetric/dmrg/environment.hpp"
#include "hubmetric/dmrg/measure.hpp"
#include "hubmetric/dmrg/mpo.hpp"
#include "hubmetric/dmrg/quantum_number.hpp"
#include "hubmetric/dmrg/tensor_train.hpp"
