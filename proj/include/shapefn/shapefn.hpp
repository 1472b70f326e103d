#pragma once

#include "shapefn/error.hpp"
#include "shapefn/vec2.hpp"
#include "shapefn/polygon.hpp"
#include "shapefn/inradius.hpp"
#include "shapefn/quadrature.hpp"
#include "shapefn/erosion.hpp"
#include "shapefn/families.hpp"
#include "shapefn/measurements.hpp"
#include "shapefn/mesh.hpp"
#include "shapefn/fem.hpp"
#include "shapefn/bounds.hpp"
#include "shapefn/analysis.hpp"
#include "shapefn/inequalities.hpp"
#include "shapefn/harness.hpp"
#include "shapefn/io.hpp"
