#pragma once

#include "trsta/rescale.hpp"
#include "trsta/stirap.hpp"
#include "trsta/transform.hpp"
#include "trsta/propagate.hpp"
#include "trsta/baselines.hpp"
#include "trsta/experiments.hpp"
#include "trsta/config.hpp"
#include "trsta/csv_io.hpp"
