// Umbrella header: pulls in the whole treepack library.
#pragma once

#include <treepack/asymptotics.hpp>
#include <treepack/densest.hpp>
#include <treepack/diagnostics.hpp>
#include <treepack/experiment.hpp>
#include <treepack/forest_cover.hpp>
#include <treepack/forests.hpp>
#include <treepack/graph.hpp>
#include <treepack/maxflow.hpp>
#include <treepack/mincut.hpp>
#include <treepack/orientation.hpp>
#include <treepack/random_process.hpp>
#include <treepack/rational.hpp>
#include <treepack/rng.hpp>
#include <treepack/tree_packing.hpp>
