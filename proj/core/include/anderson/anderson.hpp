#pragma once
// Umbrella header for the whole library.

#include "anderson/certify.hpp"
#include "anderson/disorder.hpp"
#include "anderson/dos.hpp"
#include "anderson/dynamics.hpp"
#include "anderson/errors.hpp"
#include "anderson/green.hpp"
#include "anderson/lattice.hpp"
#include "anderson/msa.hpp"
#include "anderson/operator.hpp"
#include "anderson/parallel.hpp"
#include "anderson/rng.hpp"
#include "anderson/spectral.hpp"
#include "anderson/stats.hpp"
