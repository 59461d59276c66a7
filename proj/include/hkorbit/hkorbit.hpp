#pragma once

#include "hkorbit/types.hpp"
#include "hkorbit/algebra.hpp"
#include "hkorbit/speccalc.hpp"
#include "hkorbit/roots.hpp"
#include "hkorbit/orbit.hpp"
#include "hkorbit/mostow.hpp"
#include "hkorbit/fiber_maps.hpp"
#include "hkorbit/hyperkahler.hpp"
#include "hkorbit/tangent.hpp"
#include "hkorbit/oracle.hpp"
