#pragma once

#include <functional>
#include <string>

#include "affine/harness.hpp"

namespace affine {

using ExperimentFn = std::function<Report(const ExperimentConfig&)>;

ExperimentFn experimentFunction(const std::string& name);

Report synthExperiment(const ExperimentConfig& cfg);
Report analyzeExperiment(const ExperimentConfig& cfg);

}  // namespace affine
