#pragma once

#include "halfplane/boundary.hpp"
#include "halfplane/config.hpp"
#include "halfplane/error.hpp"
#include "halfplane/format.hpp"
#include "halfplane/io.hpp"
#include "halfplane/log_line.hpp"
#include "halfplane/operators.hpp"
#include "halfplane/parallel.hpp"
#include "halfplane/quadrature.hpp"
#include "halfplane/solver.hpp"
#include "halfplane/suite.hpp"
#include "halfplane/vec2.hpp"
#include "halfplane/verify.hpp"
