#pragma once

#include "stablerank/contour.hpp"
#include "stablerank/filtration.hpp"
#include "stablerank/io.hpp"
#include "stablerank/learn.hpp"
#include "stablerank/parallel.hpp"
#include "stablerank/persistence.hpp"
#include "stablerank/point_cloud.hpp"
#include "stablerank/rng.hpp"
#include "stablerank/simplex.hpp"
#include "stablerank/spatial.hpp"
#include "stablerank/stable_rank.hpp"
#include "stablerank/step_function.hpp"
