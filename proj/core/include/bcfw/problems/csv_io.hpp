#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "bcfw/problems/struct_svm.hpp"

namespace bcfw {

// Dataset CSV layout: header row, one sample per row, label column(s)
// last. GFL signals have no labels (one time point per row, d feature
// columns). Multiclass rows are f0..f{d-1},label. Chain rows are
// p0_f0..p0_f{d-1},...,p{L-1}_f{d-1},label0..label{L-1}.

void save_gfl_csv(const std::string& path, const Eigen::MatrixXd& Y);
Eigen::MatrixXd load_gfl_csv(const std::string& path);  // returns d x n

void save_svm_csv(const std::string& path, const std::vector<SvmInstance>& data);
std::vector<SvmInstance> load_svm_csv(const std::string& path, int positions = 1);

}  // namespace bcfw
