#pragma once

// Umbrella header for the sharpest-tail-bound library.

#include "tailbounds/apps.hpp"
#include "tailbounds/common.hpp"
#include "tailbounds/dependent.hpp"
#include "tailbounds/finite_solver.hpp"
#include "tailbounds/neat.hpp"
#include "tailbounds/shift.hpp"
#include "tailbounds/simplex.hpp"
#include "tailbounds/tail_fn.hpp"
#include "tailbounds/verify.hpp"
