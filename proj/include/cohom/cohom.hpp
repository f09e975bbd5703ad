#pragma once

// Everything except the JSON and command-line layers.

#include "cohom/error.hpp"
#include "cohom/rational.hpp"
#include "cohom/matrix.hpp"
#include "cohom/linalg.hpp"
#include "cohom/complex.hpp"
#include "cohom/grid.hpp"
#include "cohom/spectral.hpp"
#include "cohom/cech.hpp"
#include "cohom/forms.hpp"
#include "cohom/derham.hpp"
#include "cohom/catalog.hpp"
#include "cohom/random.hpp"
