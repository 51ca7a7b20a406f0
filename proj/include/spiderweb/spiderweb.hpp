#pragma once

#include "spiderweb/discretize.hpp"
#include "spiderweb/errors.hpp"
#include "spiderweb/generators.hpp"
#include "spiderweb/geodesics.hpp"
#include "spiderweb/graph.hpp"
#include "spiderweb/graph_io.hpp"
#include "spiderweb/half_integer.hpp"
#include "spiderweb/maximal.hpp"
#include "spiderweb/metric_space.hpp"
#include "spiderweb/metric_tree.hpp"
#include "spiderweb/poincare_disk.hpp"
#include "spiderweb/rng.hpp"
