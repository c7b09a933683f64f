#pragma once

#include "tcec/bench.hpp"
#include "tcec/dynamics.hpp"
#include "tcec/effect.hpp"
#include "tcec/error.hpp"
#include "tcec/graph.hpp"
#include "tcec/io.hpp"
#include "tcec/oracle.hpp"
#include "tcec/solver.hpp"
#include "tcec/synthgen.hpp"
#include "tcec/verify.hpp"
