#pragma once

// Umbrella header for the whole library.

#include "irs/automorphism.hpp"
#include "irs/boundary.hpp"
#include "irs/cli.hpp"
#include "irs/error.hpp"
#include "irs/groups.hpp"
#include "irs/io.hpp"
#include "irs/permutation.hpp"
#include "irs/rational.hpp"
#include "irs/rng.hpp"
#include "irs/samplers.hpp"
#include "irs/tree.hpp"
#include "irs/verify.hpp"
