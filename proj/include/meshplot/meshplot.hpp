#pragma once

// Umbrella header for the meshplot rendering engine.

#include "meshplot/axis.hpp"
#include "meshplot/color.hpp"
#include "meshplot/errors.hpp"
#include "meshplot/expr.hpp"
#include "meshplot/mesh.hpp"
#include "meshplot/plotspec.hpp"
#include "meshplot/points.hpp"
#include "meshplot/svg.hpp"
#include "meshplot/table.hpp"
#include "meshplot/ticks.hpp"
