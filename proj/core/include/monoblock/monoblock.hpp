#pragma once

#include "monoblock/blocksolve.hpp"
#include "monoblock/discretization.hpp"
#include "monoblock/error.hpp"
#include "monoblock/init_solutions.hpp"
#include "monoblock/mesh.hpp"
#include "monoblock/models.hpp"
#include "monoblock/monotone.hpp"
#include "monoblock/oracle.hpp"
#include "monoblock/reaction.hpp"
