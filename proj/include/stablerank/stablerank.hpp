#pragma once

#include "stablerank/rational.hpp"
#include "stablerank/series.hpp"
#include "stablerank/graded_poly.hpp"
#include "stablerank/root_system.hpp"
#include "stablerank/weyl.hpp"
#include "stablerank/bgg.hpp"
#include "stablerank/conventions.hpp"
#include "stablerank/bott_samelson.hpp"
#include "stablerank/char_classes.hpp"
#include "stablerank/expression.hpp"
#include "stablerank/ring_model.hpp"
#include "stablerank/flag_model.hpp"
#include "stablerank/verdict.hpp"
#include "stablerank/calibration.hpp"
#include "stablerank/gate.hpp"
#include "stablerank/tuple_io.hpp"
