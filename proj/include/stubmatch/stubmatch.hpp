#pragma once

#include "stubmatch/analysis.hpp"
#include "stubmatch/core.hpp"
#include "stubmatch/experiment.hpp"
#include "stubmatch/grid.hpp"
#include "stubmatch/io.hpp"
#include "stubmatch/marklaw.hpp"
#include "stubmatch/matcher.hpp"
#include "stubmatch/matching.hpp"
#include "stubmatch/rng.hpp"
#include "stubmatch/sampler.hpp"
#include "stubmatch/schemes.hpp"
