#pragma once

#include "fopk/a12.hpp"
#include "fopk/a8b10.hpp"
#include "fopk/fom.hpp"
#include "fopk/solve_common.hpp"
