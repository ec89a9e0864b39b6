#ifndef SPARSEMULT_SPARSEMULT_HPP
#define SPARSEMULT_SPARSEMULT_HPP

#include "sparsemult/errors.hpp"
#include "sparsemult/rational.hpp"
#include "sparsemult/matrix.hpp"
#include "sparsemult/exact_linalg.hpp"
#include "sparsemult/polynomial.hpp"
#include "sparsemult/support_config.hpp"
#include "sparsemult/polyhedra.hpp"
#include "sparsemult/parallel.hpp"
#include "sparsemult/newton_geometry.hpp"
#include "sparsemult/local_mult.hpp"
#include "sparsemult/gale.hpp"
#include "sparsemult/families.hpp"
#include "sparsemult/io.hpp"

#endif  // SPARSEMULT_SPARSEMULT_HPP
