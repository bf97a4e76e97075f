#pragma once

// Exact-arithmetic toolkit for the enhanced standard representations of the
// classical groups: invariants, canonical closed-orbit representatives,
// closedness decisions, and descendants.

#include "enorbit/scalar.hpp"
#include "enorbit/matrix.hpp"
#include "enorbit/linalg.hpp"
#include "enorbit/group.hpp"
#include "enorbit/invariants.hpp"
#include "enorbit/canonical.hpp"
#include "enorbit/classify.hpp"
#include "enorbit/oracle.hpp"
