#pragma once

#include "report.hpp"

namespace lab {

// Runs the configured suite (or all of them) under its seed. Each suite
// draws from its own generator seeded by (seed, suite), so a suite run on
// its own reproduces its part of an `all` run.
RunReport run(const ExperimentConfig& config);

}  // namespace lab
