#pragma once

#include "qds/baselines.hpp"
#include "qds/graph.hpp"
#include "qds/hdsp.hpp"
#include "qds/io.hpp"
#include "qds/lagrange.hpp"
#include "qds/maxflow.hpp"
#include "qds/oracle.hpp"
#include "qds/peeling.hpp"
#include "qds/synth.hpp"
