#pragma once

// Umbrella header. config.hpp is not included here because it pulls in the
// (large) vendored CLI parser; include it directly where needed.
#include "analysis.hpp"
#include "integrator.hpp"
#include "model.hpp"
#include "output.hpp"
#include "sweep.hpp"
