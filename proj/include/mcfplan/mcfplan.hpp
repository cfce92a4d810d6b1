#pragma once

// Umbrella header: the full planning toolkit.

#include "bandplan.hpp"
#include "config.hpp"
#include "crosstalk.hpp"
#include "csv.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "fiber.hpp"
#include "gmi.hpp"
#include "ksp.hpp"
#include "layout.hpp"
#include "qot.hpp"
#include "scenario.hpp"
#include "textio.hpp"
#include "topology.hpp"
#include "trench.hpp"
#include "units.hpp"
