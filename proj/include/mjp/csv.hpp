#ifndef MJP_CSV_HPP
#define MJP_CSV_HPP

#include <string>

#include "mjp/diagnostics.hpp"
#include "mjp/meanfield.hpp"
#include "mjp/observations.hpp"
#include "mjp/trace.hpp"
#include "mjp/trajectory.hpp"

namespace mjp {

// Shortest round-trippable decimal form, identical across runs.
std::string format_double(double v);

// time,coord_0,...  one row per jump epoch, ascending times.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path, double horizon);

// time,kind,value_0,...  kind is noisy_state | exact_state | jump.
void write_observations_csv(const ObservationSet& obs, const std::string& path);
ObservationSet read_observations_csv(const std::string& path);

// sweep,param_0,...,param_k,log_density,n_jumps,seconds
void write_trace_csv(const Trace& trace, const std::string& path);
Trace read_trace_csv(const std::string& path);

// time,xi_0,...
void write_mean_path_csv(const MeanPath& path, const std::string& file);

// time,mean_c,lower_c,upper_c per coordinate.
void write_band_csv(const PathBand& band, const std::string& file);

}  // namespace mjp

#endif
