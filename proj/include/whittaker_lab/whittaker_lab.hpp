#pragma once

#include "whittaker_lab/error.hpp"
#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/lfactors.hpp"
#include "whittaker_lab/parallel.hpp"
#include "whittaker_lab/sampling.hpp"
#include "whittaker_lab/schur.hpp"
#include "whittaker_lab/series.hpp"
#include "whittaker_lab/transform.hpp"
#include "whittaker_lab/whittaker.hpp"
