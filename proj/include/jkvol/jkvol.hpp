#pragma once

// Exact-rational volumes of weighted quotient moduli: chamber closed forms cross-checked
// against a symbolic residue engine, plus the del Pezzo family scalar and its
// intersection-ring leading constant.

#include "blowup_ring.hpp"
#include "closed_forms.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "exp_terms.hpp"
#include "fixed_points.hpp"
#include "json_io.hpp"
#include "parallel.hpp"
#include "random_weights.hpp"
#include "rational.hpp"
#include "residues.hpp"
#include "weights.hpp"
