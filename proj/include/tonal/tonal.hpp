#pragma once

// Umbrella header: exact combinatorial measures of tonal ambiguity for
// pitch-class sets in any equal division of the octave.

#include "errors.hpp"   // IWYU pragma: export
#include "family.hpp"   // IWYU pragma: export
#include "format.hpp"   // IWYU pragma: export
#include "measure.hpp"  // IWYU pragma: export
#include "pcset.hpp"    // IWYU pragma: export
#include "temporal.hpp" // IWYU pragma: export
