#pragma once

// Umbrella header for the revival toolkit: thermal rotational ensembles,
// shaped-pulse Raman response, centrifugal-distortion pre-compensation
// design, and alignment-trace synthesis/analysis.

#include "revival/angular.hpp"
#include "revival/config.hpp"
#include "revival/csv.hpp"
#include "revival/design.hpp"
#include "revival/dynamics.hpp"
#include "revival/errors.hpp"
#include "revival/hilbert.hpp"
#include "revival/neldermead.hpp"
#include "revival/pulse.hpp"
#include "revival/raman.hpp"
#include "revival/rotor.hpp"
#include "revival/units.hpp"
#include "revival/version.hpp"
