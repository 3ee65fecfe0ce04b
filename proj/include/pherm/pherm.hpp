#pragma once

#include "pherm/analytic/boundary.hpp"
#include "pherm/analytic/closed_form.hpp"
#include "pherm/analytic/cubic.hpp"
#include "pherm/analytic/green.hpp"
#include "pherm/analytic/phase.hpp"
#include "pherm/analytic/prediction.hpp"
#include "pherm/ensemble/config.hpp"
#include "pherm/ensemble/histogram.hpp"
#include "pherm/ensemble/persist.hpp"
#include "pherm/ensemble/run.hpp"
#include "pherm/ensemble/stats.hpp"
#include "pherm/error.hpp"
#include "pherm/linalg/dense.hpp"
#include "pherm/linalg/eigen.hpp"
#include "pherm/linalg/gue.hpp"
#include "pherm/linalg/matrix.hpp"
#include "pherm/linalg/metric.hpp"
#include "pherm/linalg/spectrum.hpp"
#include "pherm/mech/mech.hpp"
#include "pherm/random.hpp"
