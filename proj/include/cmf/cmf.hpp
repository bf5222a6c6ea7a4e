#pragma once

#include "cmf/ball.hpp"
#include "cmf/classnum.hpp"
#include "cmf/error.hpp"
#include "cmf/invariants.hpp"
#include "cmf/modlevel.hpp"
#include "cmf/quadforms.hpp"
#include "cmf/quadsurd.hpp"
#include "cmf/rational.hpp"
#include "cmf/reciprocity.hpp"
#include "cmf/siegel.hpp"
