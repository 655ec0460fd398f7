#pragma once

// Umbrella header: network topology inference from consensus snapshots.

#include "netinf/concentration.hpp"
#include "netinf/covariance.hpp"
#include "netinf/diagnostics.hpp"
#include "netinf/dynamics.hpp"
#include "netinf/errors.hpp"
#include "netinf/experiments.hpp"
#include "netinf/graph.hpp"
#include "netinf/graph_io.hpp"
#include "netinf/isotonic.hpp"
#include "netinf/laplacian.hpp"
#include "netinf/metrics.hpp"
#include "netinf/random.hpp"
#include "netinf/recovery.hpp"
#include "netinf/results_io.hpp"
#include "netinf/snapshot_io.hpp"
#include "netinf/spectral_decomposition.hpp"
#include "netinf/types.hpp"
