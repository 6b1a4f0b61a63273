#pragma once

#include "lawnsearch/geometry.hpp"
#include "lawnsearch/discretize.hpp"
#include "lawnsearch/tours.hpp"
#include "lawnsearch/quota.hpp"
#include "lawnsearch/schedule.hpp"
#include "lawnsearch/heuristics.hpp"
#include "lawnsearch/sim.hpp"
#include "lawnsearch/generate.hpp"
