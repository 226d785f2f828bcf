#ifndef MJP_TRACE_HPP
#define MJP_TRACE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mjp {

// Rectangular per-sweep MCMC output: parameter draws, complete-data log
// density, jump count, and the wall-clock cost of the sweep loop.
struct Trace {
  std::vector<std::string> param_names;
  std::vector<std::vector<double>> params;  // one vector per sweep
  std::vector<double> log_density;
  std::vector<std::int64_t> n_jumps;
  std::vector<double> seconds;

  std::size_t size() const { return params.size(); }
  std::vector<double> param_column(std::size_t j) const;
  double total_seconds() const;
};

}  // namespace mjp

#endif
