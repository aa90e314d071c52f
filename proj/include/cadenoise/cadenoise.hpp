#pragma once

#include "baseline.hpp"
#include "benchmark.hpp"
#include "ca.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "metrics.hpp"
#include "noise.hpp"
#include "parallel.hpp"
