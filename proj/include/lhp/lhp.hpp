#pragma once

// Umbrella header for the Lie-Hamilton planar systems library.

#include "lhp/errors.hpp"
#include "lhp/jets.hpp"
#include "lhp/random.hpp"
#include "lhp/geometry.hpp"
#include "lhp/catalog.hpp"
#include "lhp/hamiltonian.hpp"
#include "lhp/sl2class.hpp"
#include "lhp/signal.hpp"
#include "lhp/charts.hpp"
#include "lhp/systems.hpp"
#include "lhp/prolong.hpp"
#include "lhp/coalgebra.hpp"
#include "lhp/superpose.hpp"
#include "lhp/acceptance.hpp"
