#pragma once

#include "dwigner/numerics.hpp"
#include "dwigner/phase_space.hpp"
#include "dwigner/kernels.hpp"
#include "dwigner/quantizer.hpp"
#include "dwigner/wigner.hpp"
#include "dwigner/tomography.hpp"
#include "dwigner/states.hpp"
#include "dwigner/io.hpp"
