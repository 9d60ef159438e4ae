#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace imexdc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using BinVec = Eigen::VectorXi;  // 0/1 segmentation masks

}  // namespace imexdc
