#pragma once

#include "ipdw/cost_surface.hpp"
#include "ipdw/interpolation.hpp"
#include "ipdw/sampling.hpp"
#include "ipdw/synth.hpp"

#include <cstdint>

namespace ipdw {

struct ExperimentConfig {
  InterpConfig interp;
  double mesh_cellsize = kDefaultMeshCellsize;
  std::size_t per_cell = 1;
  std::uint64_t split_seed = 1;
};

struct MethodOutcome {
  RasterGrid prediction;
  ErrorReport report;
};

struct ExperimentOutcome {
  SplitResult split;
  MethodOutcome ipdw;
  MethodOutcome idw;
};

// Split the track, interpolate the training set both ways with one shared
// config, and cross-validate both against the held-out points.
ExperimentOutcome run_experiment(const synth::SyntheticScene &scene,
                                 const ExperimentConfig &config);

} // namespace ipdw
