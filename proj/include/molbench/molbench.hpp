#pragma once

// Umbrella header: pulls in the whole toolkit.

#include "molbench/ad/adam.hpp"
#include "molbench/ad/grad_check.hpp"
#include "molbench/ad/tape.hpp"
#include "molbench/bench/csv.hpp"
#include "molbench/bench/dataset.hpp"
#include "molbench/bench/grid.hpp"
#include "molbench/bench/metrics.hpp"
#include "molbench/bench/run_config.hpp"
#include "molbench/bench/runner.hpp"
#include "molbench/bench/split.hpp"
#include "molbench/chem/element.hpp"
#include "molbench/chem/molecule.hpp"
#include "molbench/chem/smiles.hpp"
#include "molbench/chem/standardize.hpp"
#include "molbench/cka/cka.hpp"
#include "molbench/core/matrix.hpp"
#include "molbench/core/rng.hpp"
#include "molbench/fp/fingerprint.hpp"
#include "molbench/fp/morgan.hpp"
#include "molbench/gnn/layers.hpp"
#include "molbench/graph/batch.hpp"
#include "molbench/graph/molgraph.hpp"
#include "molbench/graph/normalize.hpp"
#include "molbench/models/config.hpp"
#include "molbench/models/gnn_model.hpp"
#include "molbench/models/linreg.hpp"
#include "molbench/models/random_forest.hpp"
#include "molbench/models/serialize.hpp"
