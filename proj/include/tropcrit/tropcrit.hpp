#ifndef TROPCRIT_TROPCRIT_HPP
#define TROPCRIT_TROPCRIT_HPP

#include "tropcrit/coeff.hpp"
#include "tropcrit/delzant.hpp"
#include "tropcrit/error.hpp"
#include "tropcrit/io.hpp"
#include "tropcrit/laurent.hpp"
#include "tropcrit/lift.hpp"
#include "tropcrit/linalg.hpp"
#include "tropcrit/lp.hpp"
#include "tropcrit/mutation.hpp"
#include "tropcrit/newton.hpp"
#include "tropcrit/numerics.hpp"
#include "tropcrit/polytope.hpp"
#include "tropcrit/puiseux.hpp"
#include "tropcrit/rational.hpp"
#include "tropcrit/toric.hpp"
#include "tropcrit/tropical.hpp"

#endif  // TROPCRIT_TROPCRIT_HPP
