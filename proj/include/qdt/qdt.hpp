#pragma once

#include "errors.hpp"
#include "tolerances.hpp"
#include "matrix.hpp"
#include "eigen.hpp"
#include "operators.hpp"
#include "spectral.hpp"
#include "random.hpp"
#include "decision_variable.hpp"
#include "born.hpp"
#include "least_squares.hpp"
#include "reconstruction.hpp"
#include "phenomena.hpp"
#include "spin_model.hpp"
#include "format.hpp"
#include "scenario.hpp"
#include "report.hpp"
#include "demos.hpp"
