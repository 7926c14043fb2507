#pragma once

#include "fopk/harness.hpp"
#include "fopk/kernel.hpp"
#include "fopk/linalg.hpp"
#include "fopk/matrix_market.hpp"
#include "fopk/problems.hpp"
#include "fopk/solvers.hpp"
