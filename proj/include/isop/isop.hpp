#pragma once

// Umbrella header.

#include "isop/bounds1d.hpp"
#include "isop/common.hpp"
#include "isop/concentration.hpp"
#include "isop/csv.hpp"
#include "isop/density1d.hpp"
#include "isop/functional.hpp"
#include "isop/modulus.hpp"
#include "isop/modulus_estimate.hpp"
#include "isop/norms.hpp"
#include "isop/profile.hpp"
#include "isop/quadrature.hpp"
#include "isop/rng.hpp"
#include "isop/rootfind.hpp"
#include "isop/sampling.hpp"
#include "isop/serialize.hpp"
#include "isop/special.hpp"
#include "isop/transport.hpp"
#include "isop/version.hpp"
