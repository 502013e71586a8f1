#pragma once

#include "qfb/instance.hpp"

namespace qfb {

/// Named verification suites driven by a loaded instance. Suite names:
/// validate, frame, curvature, torsion, calculus, regularity, homogeneous,
/// all. Unknown names throw std::invalid_argument.
Report run_suite(const Instance& inst, const std::string& suite);

std::vector<std::string> suite_names();

}  // namespace qfb
