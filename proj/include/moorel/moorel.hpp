#ifndef MOOREL_MOOREL_HPP
#define MOOREL_MOOREL_HPP

// Umbrella header: exact arithmetic in cyclotomic fields, Dirichlet
// characters, generalized Bernoulli numbers, special values L(1-n, S/p),
// KU-local Moore-spectrum homotopy orders, the floating-point Euler-product
// layer, and the report/command plumbing used by the CLI.

#include "moorel/rational.hpp"
#include "moorel/numutil.hpp"
#include "moorel/cyclotomic.hpp"
#include "moorel/dirichlet.hpp"
#include "moorel/bernoulli.hpp"
#include "moorel/lvalues.hpp"
#include "moorel/homotopy.hpp"
#include "moorel/analytic.hpp"
#include "moorel/report.hpp"
#include "moorel/commands.hpp"

#endif  // MOOREL_MOOREL_HPP
