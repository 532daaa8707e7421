#pragma once

// Umbrella header: the whole library in one include.

#include "latlin/types.hpp"
#include "latlin/errors.hpp"
#include "latlin/check.hpp"
#include "latlin/lattice.hpp"
#include "latlin/endo.hpp"
#include "latlin/base.hpp"
#include "latlin/fitting.hpp"
#include "latlin/gf.hpp"
#include "latlin/instances.hpp"
#include "latlin/io.hpp"
