#pragma once

// hirsch: evaluate generalized Hirsch functions h_f(theta) of continuous
// curves, classify which shapes can be Hirsch functions, reconstruct f from
// a given h_f, and solve the self-referential exponent equations whose
// roots are the golden section and the plastic number.

#include "hirsch/errors.hpp"
#include "hirsch/domain.hpp"
#include "hirsch/expression.hpp"
#include "hirsch/function.hpp"
#include "hirsch/json_io.hpp"
#include "hirsch/transform.hpp"
#include "hirsch/classify.hpp"
#include "hirsch/reconstruct.hpp"
#include "hirsch/fixpoint.hpp"
#include "hirsch/ingest.hpp"
