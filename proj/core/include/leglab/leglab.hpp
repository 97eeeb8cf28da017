#pragma once

#include "leglab/causality.hpp"
#include "leglab/error.hpp"
#include "leglab/expression.hpp"
#include "leglab/genfun.hpp"
#include "leglab/hodograph.hpp"
#include "leglab/io.hpp"
#include "leglab/jet.hpp"
#include "leglab/order.hpp"
#include "leglab/scalar_field.hpp"
#include "leglab/sphere_grid.hpp"
