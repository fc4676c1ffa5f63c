#pragma once

// Umbrella header for the ddsub library: exact-rational point sets, bad-
// configuration counting, distinct-distance subset extraction, generators,
// file formats, and the experiment harness.

#include "ddsub/counting.hpp"
#include "ddsub/experiment.hpp"
#include "ddsub/extraction.hpp"
#include "ddsub/generators.hpp"
#include "ddsub/geometry.hpp"
#include "ddsub/point_file.hpp"
#include "ddsub/rational.hpp"
#include "ddsub/rng.hpp"
