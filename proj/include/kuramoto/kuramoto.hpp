#pragma once

#include "kuramoto/analysis.hpp"
#include "kuramoto/equilibria.hpp"
#include "kuramoto/experiment.hpp"
#include "kuramoto/integrator.hpp"
#include "kuramoto/io.hpp"
#include "kuramoto/model.hpp"
#include "kuramoto/rng.hpp"
#include "kuramoto/thresholds.hpp"
#include "kuramoto/types.hpp"
