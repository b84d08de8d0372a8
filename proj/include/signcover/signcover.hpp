#pragma once

#include "balance.hpp"
#include "barbell_cover.hpp"
#include "circuit.hpp"
#include "circuit_cover.hpp"
#include "coloring.hpp"
#include "cycle_forest.hpp"
#include "error.hpp"
#include "generate.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "structure.hpp"
#include "tjoin.hpp"
#include "trace.hpp"
#include "two_factor_cover.hpp"
#include "validate.hpp"
