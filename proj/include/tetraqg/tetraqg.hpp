#pragma once

#include "tetraqg/angles.hpp"
#include "tetraqg/cases.hpp"
#include "tetraqg/errors.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/json_io.hpp"
#include "tetraqg/linear_system.hpp"
#include "tetraqg/rational.hpp"
#include "tetraqg/simplex.hpp"
#include "tetraqg/tetrahedron.hpp"
#include "tetraqg/trials.hpp"
#include "tetraqg/unfold.hpp"
#include "tetraqg/vec.hpp"
