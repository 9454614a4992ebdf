// GNS construction for positive functionals on a multi-matrix algebra:
// quotients the algebra by the null space of the sesquilinear form
// (a, b) -> phi(b* a) and carries the left-multiplication action onto the
// quotient, yielding a representation with cyclic vector reproducing phi.
#pragma once

#include "repq/functionals.hpp"

namespace repq {

struct GnsTriple {
  AlgebraDescriptor descriptor;
  int space_dim = 0;         // dimension of the quotient space
  std::vector<Matrix> rep_matrices;  // one space_dim x space_dim matrix per basis element
  Vector cyclic_vector;      // class of the unit; squared norm equals ||phi||
  Matrix class_matrix;       // space_dim x dim(A); column a = class of basis element a
};

// Builds the triple for a positive functional. The quotient is cut at
// eigenvalues of the Gram matrix below rank_tol relative to the largest;
// phi = 0 yields the zero-dimensional triple. Throws std::invalid_argument
// for non-positive input.
GnsTriple gns(const Functional& phi, double rank_tol = 1e-9);

struct GnsValidation {
  double multiplicativity_defect = 0.0;  // max over basis pairs
  double adjoint_defect = 0.0;           // max over basis elements
  double reproduction_defect = 0.0;      // max |<pi(e) xi, xi> - phi(e)|
  double norm_defect = 0.0;              // | ||xi||^2 - ||phi|| |
  int cyclic_rank = 0;                   // rank of {pi(e) xi : e basis}
  bool pass = false;
};

// Checks the triple against phi; passes iff every defect is <= tol and the
// cyclic rank fills the space.
GnsValidation validate_gns(const GnsTriple& triple, const Functional& phi,
                           double tol = 1e-9);

}  // namespace repq
