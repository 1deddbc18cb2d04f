#pragma once

// Umbrella header for the whole library.

#include "frv/arith.hpp"
#include "frv/decompose.hpp"
#include "frv/errors.hpp"
#include "frv/fuzzy_set.hpp"
#include "frv/geometry.hpp"
#include "frv/grids.hpp"
#include "frv/io.hpp"
#include "frv/sample.hpp"
#include "frv/support_surface.hpp"
