#pragma once

// Umbrella header.

#include "negdep/scalar.hpp"
#include "negdep/outcome.hpp"
#include "negdep/pmf.hpp"
#include "negdep/linalg.hpp"
#include "negdep/lp.hpp"
#include "negdep/upper_sets.hpp"
#include "negdep/orders.hpp"
#include "negdep/properties.hpp"
#include "negdep/pgf.hpp"
#include "negdep/poly.hpp"
#include "negdep/stability.hpp"
#include "negdep/maxent.hpp"
#include "negdep/polytope.hpp"
#include "negdep/constructions.hpp"
#include "negdep/json_io.hpp"
#include "negdep/reproduce.hpp"
#include "negdep/report_json.hpp"
