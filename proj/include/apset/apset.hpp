#pragma once

/// Umbrella header pulling in the whole library.

#include "additive.hpp"
#include "arcs.hpp"
#include "expsum.hpp"
#include "fft.hpp"
#include "frequency.hpp"
#include "generators.hpp"
#include "integer_set.hpp"
#include "numeric.hpp"
#include "report.hpp"
#include "spectrum.hpp"
