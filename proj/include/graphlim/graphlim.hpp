#pragma once

// Umbrella header: the full finite-scale invariant toolkit.

#include "graphlim/base_space.hpp"
#include "graphlim/complex.hpp"
#include "graphlim/cost.hpp"
#include "graphlim/decomposition.hpp"
#include "graphlim/dsu.hpp"
#include "graphlim/exact_linalg.hpp"
#include "graphlim/graphing.hpp"
#include "graphlim/group.hpp"
#include "graphlim/homology.hpp"
#include "graphlim/lipschitz.hpp"
#include "graphlim/manifest.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/partial_bijection.hpp"
#include "graphlim/prng.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/report.hpp"
#include "graphlim/schreier.hpp"
#include "graphlim/snf.hpp"
#include "graphlim/spectral.hpp"
#include "graphlim/unlabeled_graph.hpp"
