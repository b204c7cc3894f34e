#ifndef STATKIT_STATKIT_HPP
#define STATKIT_STATKIT_HPP

#include "statkit/concentration.hpp"
#include "statkit/csv.hpp"
#include "statkit/distributions.hpp"
#include "statkit/errors.hpp"
#include "statkit/estimation.hpp"
#include "statkit/inference.hpp"
#include "statkit/joint.hpp"
#include "statkit/jsonio.hpp"
#include "statkit/linmodels.hpp"
#include "statkit/montecarlo.hpp"
#include "statkit/rng.hpp"
#include "statkit/special.hpp"
#include "statkit/transform.hpp"

namespace statkit {
inline constexpr const char* version = "0.1.0";
}

#endif
