// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hubmetric/basis.hpp"
#include "hubmetric/density.hpp"
#include "hubmetric/dmrg.hpp"
#include "hubmetric/ed.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/free_fermion.hpp"
#include "hubmetric/grid.hpp"
#include "hubmetric/hamiltonian.hpp"
#include "hubmetric/metric.hpp"
#include "hubmetric/model.hpp"
#include "hubmetric/oracle.hpp"
#include "hubmetric/plot.hpp"
#include "hubmetric/solve.hpp"
#include "hubmetric/store.hpp"
#include "hubmetric/sweep.hpp"
