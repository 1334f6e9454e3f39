#pragma once

#include <Eigen/Core>

namespace csl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace csl
