#pragma once

// Wavelength planning for DWDM links that carry quantum key distribution
// channels next to classical traffic.

#include "qkdwdm/assign.hpp"
#include "qkdwdm/assignment.hpp"
#include "qkdwdm/bench.hpp"
#include "qkdwdm/constants.hpp"
#include "qkdwdm/context.hpp"
#include "qkdwdm/errors.hpp"
#include "qkdwdm/grid.hpp"
#include "qkdwdm/noise.hpp"
#include "qkdwdm/params.hpp"
#include "qkdwdm/plan.hpp"
#include "qkdwdm/raman.hpp"
#include "qkdwdm/rate.hpp"
#include "qkdwdm/report.hpp"
#include "qkdwdm/scenario_io.hpp"
