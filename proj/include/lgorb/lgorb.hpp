#ifndef LGORB_LGORB_HPP
#define LGORB_LGORB_HPP

// Umbrella header: the whole library.

#include "cyclotomic.hpp"
#include "error.hpp"
#include "matgroup.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "poincare.hpp"
#include "problem.hpp"
#include "qhpoly.hpp"
#include "rational.hpp"
#include "render.hpp"
#include "sectors.hpp"
#include "series.hpp"

#endif // LGORB_LGORB_HPP
