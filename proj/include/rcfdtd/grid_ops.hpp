#pragma once

#include "rcfdtd/grid.hpp"

namespace rcfdtd {

// Centered difference operators.  Results are defined on the interior box
// 0..n[d] (wider internally where compositions need it); output ghosts are
// left at zero.  Preconditions on the ghost width are checked.

ScalarField laplacian_2h(const ScalarField& f);
ScalarField laplacian_4h(const ScalarField& f);
ScalarField biharmonic_2h(const ScalarField& f);

ScalarField d0(const ScalarField& f, int axis);
ScalarField d0_4th(const ScalarField& f, int axis);
ScalarField d0_third(const ScalarField& f, int axis);

struct Norms {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

/// Discrete norms over interior nodes j_d in [0, n_d] with divisor
/// prod_d n_d, exactly as the error reports define them.
Norms norms(const ScalarField& f);

/// Copy periodic images into the ghost halo of every periodic axis.
void fill_periodic(ScalarField& f);

}  // namespace rcfdtd
