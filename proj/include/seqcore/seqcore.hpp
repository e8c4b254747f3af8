#pragma once

#include "seqcore/band_ops.hpp"
#include "seqcore/cores.hpp"
#include "seqcore/density.hpp"
#include "seqcore/duals.hpp"
#include "seqcore/generators.hpp"
#include "seqcore/geometry.hpp"
#include "seqcore/matclass.hpp"
#include "seqcore/matrix_spec.hpp"
#include "seqcore/parallel.hpp"
#include "seqcore/reductions.hpp"
#include "seqcore/rng.hpp"
#include "seqcore/subset_sup.hpp"
#include "seqcore/types.hpp"
#include "seqcore/verdict.hpp"
