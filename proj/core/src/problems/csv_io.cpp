#include "bcfw/problems/csv_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "bcfw/errors.hpp"

namespace bcfw {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << std::setprecision(17);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

}  // namespace

void save_gfl_csv(const std::string& path, const Eigen::MatrixXd& Y) {
  auto os = open_out(path);
  for (int c = 0; c < Y.rows(); ++c) os << (c ? "," : "") << "f" << c;
  os << "\n";
  for (int t = 0; t < Y.cols(); ++t) {
    for (int c = 0; c < Y.rows(); ++c) os << (c ? "," : "") << Y(c, t);
    os << "\n";
  }
}

Eigen::MatrixXd load_gfl_csv(const std::string& path) {
  auto is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty gfl csv: " + path);
  const int d = static_cast<int>(split_line(line).size());
  std::vector<Eigen::VectorXd> cols;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (static_cast<int>(cells.size()) != d)
      throw std::runtime_error("gfl csv: ragged row in " + path);
    Eigen::VectorXd v(d);
    for (int c = 0; c < d; ++c) v[c] = std::stod(cells[c]);
    cols.push_back(std::move(v));
  }
  Eigen::MatrixXd Y(d, static_cast<int>(cols.size()));
  for (int t = 0; t < Y.cols(); ++t) Y.col(t) = cols[t];
  return Y;
}

void save_svm_csv(const std::string& path, const std::vector<SvmInstance>& data) {
  if (data.empty()) throw ContractViolation("save_svm_csv: empty dataset");
  auto os = open_out(path);
  const int positions = static_cast<int>(data[0].features.rows());
  const int d = static_cast<int>(data[0].features.cols());
  bool first = true;
  for (int p = 0; p < positions; ++p)
    for (int c = 0; c < d; ++c) {
      if (!first) os << ",";
      if (positions > 1) os << "p" << p << "_";
      os << "f" << c;
      first = false;
    }
  for (int p = 0; p < positions; ++p) os << ",label" << (positions > 1 ? std::to_string(p) : "");
  os << "\n";
  for (const auto& inst : data) {
    first = true;
    for (int p = 0; p < positions; ++p)
      for (int c = 0; c < d; ++c) {
        if (!first) os << ",";
        os << inst.features(p, c);
        first = false;
      }
    for (int p = 0; p < positions; ++p) os << "," << inst.label[p];
    os << "\n";
  }
}

std::vector<SvmInstance> load_svm_csv(const std::string& path, int positions) {
  if (positions < 1) throw ContractViolation("load_svm_csv: positions must be >= 1");
  auto is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty svm csv: " + path);
  const int cols = static_cast<int>(split_line(line).size());
  const int feature_cols = cols - positions;
  if (feature_cols <= 0 || feature_cols % positions != 0)
    throw std::runtime_error("svm csv: column count inconsistent with positions");
  const int d = feature_cols / positions;
  std::vector<SvmInstance> data;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (static_cast<int>(cells.size()) != cols)
      throw std::runtime_error("svm csv: ragged row in " + path);
    SvmInstance inst;
    inst.features.resize(positions, d);
    for (int p = 0; p < positions; ++p)
      for (int c = 0; c < d; ++c) inst.features(p, c) = std::stod(cells[p * d + c]);
    inst.label.resize(positions);
    for (int p = 0; p < positions; ++p)
      inst.label[p] = std::stoi(cells[feature_cols + p]);
    data.push_back(std::move(inst));
  }
  return data;
}

}  // namespace bcfw
