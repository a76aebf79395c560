#include "ipdw/pipeline.hpp"

namespace ipdw {

ExperimentOutcome run_experiment(const synth::SyntheticScene &scene,
                                 const ExperimentConfig &config) {
  ExperimentOutcome out;
  out.split = grid_split(scene.track, config.mesh_cellsize, config.per_cell, config.split_seed);
  out.ipdw.prediction = interpolate_ipdw(out.split.training, scene.cost, config.interp);
  out.idw.prediction =
      interpolate_idw(out.split.training, scene.geometry, &scene.cost, config.interp);
  out.ipdw.report = cross_validate(out.ipdw.prediction, out.split.validation);
  out.idw.report = cross_validate(out.idw.prediction, out.split.validation);
  return out;
}

} // namespace ipdw
