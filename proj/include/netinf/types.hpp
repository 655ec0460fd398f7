#pragma once

#include <Eigen/Dense>

namespace netinf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace netinf
