#pragma once

#include "floquetfib/error.hpp"
#include "floquetfib/numeric.hpp"
#include "floquetfib/combinatorics.hpp"
#include "floquetfib/matrices.hpp"
#include "floquetfib/floquet.hpp"
#include "floquetfib/solver.hpp"
#include "floquetfib/io.hpp"
#include "floquetfib/svg.hpp"
#include "floquetfib/cli.hpp"
