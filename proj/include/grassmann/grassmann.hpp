#pragma once

#include "grassmann/gf.hpp"
#include "grassmann/linalg.hpp"
#include "grassmann/counting.hpp"
#include "grassmann/subspace.hpp"
#include "grassmann/geometry.hpp"
#include "grassmann/paths.hpp"
#include "grassmann/code.hpp"
#include "grassmann/majority.hpp"
#include "grassmann/sim.hpp"
#include "grassmann/serialize.hpp"
#include "grassmann/verify.hpp"
