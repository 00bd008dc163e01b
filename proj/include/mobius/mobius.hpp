#pragma once

#include "mobius/experiment.hpp"
#include "mobius/fft.hpp"
#include "mobius/geometry.hpp"
#include "mobius/grid.hpp"
#include "mobius/identity_conv.hpp"
#include "mobius/io.hpp"
#include "mobius/layers.hpp"
#include "mobius/legendre.hpp"
#include "mobius/logpolar.hpp"
#include "mobius/mellin.hpp"
#include "mobius/operators.hpp"
#include "mobius/quadrature.hpp"
#include "mobius/sht.hpp"
#include "mobius/special.hpp"
#include "mobius/tables.hpp"
#include "mobius/wigner.hpp"
#include "mobius/xform.hpp"
