#pragma once

#include "qgeom/errors.hpp"
#include "qgeom/simulator.hpp"
#include "qgeom/ansatz.hpp"
#include "qgeom/hopf.hpp"
#include "qgeom/curvature.hpp"
#include "qgeom/qgt.hpp"
#include "qgeom/vqe.hpp"
#include "qgeom/optimize.hpp"
#include "qgeom/harness/experiment.hpp"
#include "qgeom/harness/landscape.hpp"
#include "qgeom/harness/inspect.hpp"
#include "qgeom/harness/validate.hpp"
