#pragma once

#include "wmvipd/dataio.hpp"
#include "wmvipd/experiments.hpp"
#include "wmvipd/linalg.hpp"
#include "wmvipd/params.hpp"
#include "wmvipd/problem.hpp"
#include "wmvipd/prox.hpp"
#include "wmvipd/rng.hpp"
#include "wmvipd/solvers.hpp"
